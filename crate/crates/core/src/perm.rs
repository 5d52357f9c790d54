//! Permutations, their cycle graphs, and exhaustive enumeration of `S_n`.
//!
//! The cycle graph `G(π)` lives on vertices `0..=n`. With the convention
//! `π_0 = 0` and all indices taken mod `n + 1`, it has grey edges
//! `i - 1 → i` and black edges `π_i → π_{i-1}`. Every vertex has exactly one
//! outgoing edge of each colour, so following grey, black, grey, black, …
//! partitions the edges into alternating cycles.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which `S_n` is enumerated unless the caller raises it.
pub const DEFAULT_ENUMERATION_CAP: usize = 11;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Validates a one-line sequence. The error names the first index that
    /// repeats a value or falls outside `1..=n`.
    pub fn new(seq: &[i64]) -> Result<Self> {
        let n = seq.len();
        let mut seen = vec![false; n + 1];
        let mut values = Vec::with_capacity(n);
        for (index, &v) in seq.iter().enumerate() {
            if v < 1 || v as usize > n {
                return Err(Error::InvalidPermutation {
                    index,
                    reason: format!("value {v} is outside 1..={n}"),
                });
            }
            let v = v as usize;
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    index,
                    reason: format!("value {v} is repeated"),
                });
            }
            seen[v] = true;
            values.push(v);
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `π_1, …, π_n`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `π_i` for `1 <= i <= n`, with `π_0 = 0`.
    pub fn at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.values[i - 1]
        }
    }

    /// Number of cycles of `π` as a bijection of `{1, …, n}`.
    pub fn disjoint_cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.values[v - 1];
            }
        }
        cycles
    }

    /// Number of alternating cycles of `G(π)`, without materializing them.
    pub fn alternating_cycle_count(&self) -> usize {
        let mut scratch = CycleScratch::default();
        scratch.alternating_cycle_count(&self.values)
    }

    /// Advance to the lexicographic successor of `values[from..]`. Returns
    /// false (leaving the slice unchanged) when it is already the last one.
    fn next_lexicographic(&mut self, from: usize) -> bool {
        let v = &mut self.values[from..];
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

impl TryFrom<Vec<i64>> for Permutation {
    type Error = Error;

    fn try_from(seq: Vec<i64>) -> Result<Self> {
        Permutation::new(&seq)
    }
}

impl From<Permutation> for Vec<i64> {
    fn from(p: Permutation) -> Self {
        p.values.into_iter().map(|v| v as i64).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Reusable buffers for counting alternating cycles in hot loops.
#[derive(Debug, Default)]
pub struct CycleScratch {
    ext: Vec<usize>,
    pos: Vec<usize>,
    seen: Vec<bool>,
}

impl CycleScratch {
    fn load(&mut self, values: &[usize]) {
        let m = values.len() + 1;
        self.ext.clear();
        self.ext.push(0);
        self.ext.extend_from_slice(values);
        self.pos.clear();
        self.pos.resize(m, 0);
        for (i, &v) in self.ext.iter().enumerate() {
            self.pos[v] = i;
        }
        self.seen.clear();
        self.seen.resize(m, false);
    }

    /// Successor of grey-edge tail `v` along its alternating cycle: the grey
    /// edge `v → v+1`, then the black edge leaving `v+1`.
    #[inline]
    fn step(&self, v: usize) -> (usize, usize) {
        let m = self.ext.len();
        let w = (v + 1) % m;
        let i = self.pos[w];
        (w, self.ext[(i + m - 1) % m])
    }

    pub fn alternating_cycle_count(&mut self, values: &[usize]) -> usize {
        self.load(values);
        let m = self.ext.len();
        let mut count = 0;
        for start in 0..m {
            if self.seen[start] {
                continue;
            }
            count += 1;
            let mut v = start;
            while !self.seen[v] {
                self.seen[v] = true;
                v = self.step(v).1;
            }
        }
        count
    }
}

/// The alternating cycles of `G(π)`.
///
/// Each cycle is listed as its vertex sequence starting with a grey edge, so
/// vertices at even positions are grey-edge tails and the closing vertex is
/// not repeated. Cycles start at their smallest grey-edge tail and are
/// sorted by that vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltCycleDecomposition {
    pub n: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl AltCycleDecomposition {
    pub fn new(pi: &Permutation) -> Self {
        let mut scratch = CycleScratch::default();
        scratch.load(pi.values());
        let m = pi.n() + 1;
        let mut cycles = Vec::new();
        // Visiting tails in increasing order makes each cycle start at its
        // smallest tail and keeps the list sorted.
        for start in 0..m {
            if scratch.seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !scratch.seen[v] {
                scratch.seen[v] = true;
                let (w, next) = scratch.step(v);
                cycle.push(v);
                cycle.push(w);
                v = next;
            }
            cycles.push(cycle);
        }
        AltCycleDecomposition { n: pi.n(), cycles }
    }

    /// Number of alternating cycles, `k`.
    pub fn k(&self) -> usize {
        self.cycles.len()
    }

    /// Total number of edges over all cycles; always `2(n + 1)`.
    pub fn total_edges(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Cycles written as closed walks, e.g. `0-1-3-4-1-2-0`.
    pub fn cycle_strings(&self) -> Vec<String> {
        self.cycles
            .iter()
            .map(|c| {
                c.iter()
                    .chain(std::iter::once(&c[0]))
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            })
            .collect()
    }
}

pub fn alternating_cycle_decomposition(pi: &Permutation) -> AltCycleDecomposition {
    AltCycleDecomposition::new(pi)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Visit every permutation of `S_n` once, in lexicographic order.
pub fn enumerate_permutations(
    n: usize,
    cap: usize,
    mut visitor: impl FnMut(&Permutation),
) -> Result<()> {
    check_cap(n, cap)?;
    let mut pi = Permutation::identity(n);
    loop {
        visitor(&pi);
        if !pi.next_lexicographic(0) {
            return Ok(());
        }
    }
}

/// Visit, in lexicographic order, the permutations of `S_n` with `π_1 = first`.
pub fn enumerate_with_first(
    n: usize,
    first: usize,
    cap: usize,
    mut visitor: impl FnMut(&Permutation),
) -> Result<()> {
    check_cap(n, cap)?;
    if first < 1 || first > n {
        return Err(Error::InvalidInput(format!(
            "first value {first} is outside 1..={n}"
        )));
    }
    let mut values = vec![first];
    values.extend((1..=n).filter(|&v| v != first));
    let mut pi = Permutation { values };
    loop {
        visitor(&pi);
        if !pi.next_lexicographic(1) {
            return Ok(());
        }
    }
}

/// Fold over all of `S_n`, fanned out across threads by the first value.
///
/// Each partition is folded in lexicographic order and the partial results
/// are merged in order of first value, so the result does not depend on the
/// number of threads.
pub fn par_fold_permutations<T, I, F, M>(
    n: usize,
    cap: usize,
    init: I,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &Permutation) + Sync,
    M: Fn(T, T) -> T,
{
    check_cap(n, cap)?;
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &Permutation::identity(0));
        return Ok(acc);
    }
    let parts = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            enumerate_with_first(n, first, cap, |pi| fold(&mut acc, pi))?;
            Ok(acc)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(parts.into_iter().reduce(merge).expect("n >= 1 partitions"))
}
