//! Orientation-respecting gluings of a `2n`-gon whose boundary is `n` black
//! sides followed by `n` grey sides.
//!
//! Corners `v_0 … v_{2n-1}` run counterclockwise. Black side `b_i` goes
//! `v_{i-1} → v_i` (`i = 1..=n`); grey side `g_j` goes
//! `v_{(2n-j+1) mod 2n} → v_{2n-j}`, i.e. the grey sides are numbered
//! clockwise from `v_0`. The permutation glues `b_i` onto `g_{π_i}`, start to
//! start and end to end. The glued boundary is a graph with `n` edges and
//! `k` vertices on a closed surface with one face, so `2 - 2g = k - n + 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::perm::{par_fold_permutations, Permutation};

/// Disjoint sets over `0..len` with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
            classes: len,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.classes -= 1;
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Class label of every element, each class named by its smallest member.
    pub fn labels(&mut self) -> Vec<usize> {
        let len = self.parent.len();
        let mut smallest = vec![usize::MAX; len];
        for x in 0..len {
            let r = self.find(x);
            smallest[r] = smallest[r].min(x);
        }
        (0..len).map(|x| smallest[self.find(x)]).collect()
    }
}

/// Outcome of gluing the `2n`-gon by one permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingResult {
    pub n: usize,
    pub vertex_orbits: usize,
    pub genus: usize,
    pub permutation: Permutation,
    /// Orbit of each corner `v_0 … v_{2n-1}`, labelled by its smallest corner.
    pub corner_orbits: Vec<usize>,
}

fn corner_union_find(pi: &Permutation) -> UnionFind {
    let n = pi.n();
    let corners = 2 * n;
    let mut uf = UnionFind::new(corners);
    for i in 1..=n {
        let j = pi.at(i);
        let (black_start, black_end) = (i - 1, i);
        let (grey_start, grey_end) = ((corners - j + 1) % corners, corners - j);
        uf.union(black_start, grey_start);
        uf.union(black_end, grey_end);
    }
    uf
}

/// Number of vertices of the glued graph. The empty gluing (`n = 0`) is a
/// sphere with a single vertex.
pub fn vertex_orbit_count(pi: &Permutation) -> usize {
    if pi.n() == 0 {
        return 1;
    }
    corner_union_find(pi).classes()
}

fn genus_from_orbits(n: usize, vertex_orbits: usize) -> usize {
    // 2 - 2g = k - n + 1
    debug_assert!(vertex_orbits <= n + 1 && (n + 1 - vertex_orbits).is_multiple_of(2));
    (n + 1 - vertex_orbits) / 2
}

pub fn glue_polygon(pi: &Permutation) -> GluingResult {
    let n = pi.n();
    let (vertex_orbits, corner_orbits) = if n == 0 {
        (1, Vec::new())
    } else {
        let mut uf = corner_union_find(pi);
        (uf.classes(), uf.labels())
    };
    GluingResult {
        n,
        vertex_orbits,
        genus: genus_from_orbits(n, vertex_orbits),
        permutation: pi.clone(),
        corner_orbits,
    }
}

/// `h_g(n)`: number of gluings of the `2n`-gon of each genus.
pub fn count_gluings_by_genus(n: usize, cap: usize) -> Result<BTreeMap<usize, u64>> {
    let tally = par_fold_permutations(
        n,
        cap,
        || vec![0u64; n / 2 + 1],
        |acc, pi| acc[genus_from_orbits(n, vertex_orbit_count(pi))] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(tally.into_iter().enumerate().collect())
}

/// Exhaustive comparison of glued vertex orbits with alternating cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub n: usize,
    pub permutations: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub permutation: Permutation,
    pub vertex_orbits: usize,
    pub alternating_cycles: usize,
}

/// Checks, for every `π ∈ S_n`, that the glued `2n`-gon has as many vertices
/// as `G(π)` has alternating cycles. Reports the lexicographically first
/// mismatch, if any.
pub fn verify_gluing_bijection(n: usize, cap: usize) -> Result<BijectionReport> {
    let (permutations, counterexample) = par_fold_permutations(
        n,
        cap,
        || (0u64, None),
        |(count, first), pi| {
            *count += 1;
            if first.is_some() {
                return;
            }
            let orbits = vertex_orbit_count(pi);
            let cycles = pi.alternating_cycle_count();
            if orbits != cycles {
                *first = Some(Counterexample {
                    permutation: pi.clone(),
                    vertex_orbits: orbits,
                    alternating_cycles: cycles,
                });
            }
        },
        |(ca, fa), (cb, fb)| (ca + cb, fa.or(fb)),
    )?;
    Ok(BijectionReport {
        n,
        permutations,
        passed: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_permutations, DEFAULT_ENUMERATION_CAP as CAP};

    fn perm(v: &[i64]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn count_by_genus_serial(n: usize) -> BTreeMap<usize, u64> {
        let mut tally = BTreeMap::new();
        enumerate_permutations(n, CAP, |pi| {
            *tally.entry(glue_polygon(pi).genus).or_insert(0) += 1;
        })
        .unwrap();
        tally
    }

    #[test]
    fn octagon_of_figure_two() {
        let r = glue_polygon(&perm(&[2, 3, 1, 4]));
        assert_eq!((r.vertex_orbits, r.genus), (3, 1));
        assert_eq!(r.corner_orbits.len(), 8);
    }

    #[test]
    fn small_gluings() {
        let r = glue_polygon(&perm(&[1]));
        assert_eq!((r.vertex_orbits, r.genus), (2, 0));
        let r = glue_polygon(&perm(&[2, 1]));
        assert_eq!((r.vertex_orbits, r.genus), (1, 1));
        assert_eq!(r.corner_orbits, vec![0, 0, 0, 0]);
        let r = glue_polygon(&Permutation::identity(0));
        assert_eq!((r.vertex_orbits, r.genus), (1, 0));
    }

    #[test]
    fn euler_relation_holds() {
        enumerate_permutations(6, CAP, |pi| {
            let r = glue_polygon(pi);
            assert_eq!(
                2 - 2 * r.genus as i64,
                r.vertex_orbits as i64 - r.n as i64 + 1
            );
            assert!(r.genus <= r.n / 2);
        })
        .unwrap();
    }

    #[test]
    fn genus_counts() {
        let m = |pairs: &[(usize, u64)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
        assert_eq!(count_gluings_by_genus(0, CAP).unwrap(), m(&[(0, 1)]));
        assert_eq!(
            count_gluings_by_genus(2, CAP).unwrap(),
            m(&[(0, 1), (1, 1)])
        );
        assert_eq!(
            count_gluings_by_genus(4, CAP).unwrap(),
            m(&[(0, 1), (1, 15), (2, 8)])
        );
        assert_eq!(
            count_gluings_by_genus(6, CAP).unwrap(),
            count_by_genus_serial(6)
        );
    }

    #[test]
    fn genus_count_invariants() {
        for n in 0..=7 {
            let h = count_gluings_by_genus(n, CAP).unwrap();
            assert_eq!(h.values().sum::<u64>(), (1..=n as u64).product::<u64>());
            assert_eq!(h[&0], 1);
            for (g, count) in &h {
                if n < 2 * g {
                    assert_eq!(*count, 0);
                }
            }
        }
    }

    #[test]
    fn bijection_small() {
        for n in [1, 4, 7] {
            let r = verify_gluing_bijection(n, CAP).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.permutations, (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn union_find_labels_by_smallest_member() {
        let mut uf = UnionFind::new(6);
        uf.union(5, 3);
        uf.union(3, 1);
        uf.union(4, 2);
        assert_eq!(uf.classes(), 3);
        assert_eq!(uf.labels(), vec![0, 1, 2, 1, 2, 1]);
    }
}
