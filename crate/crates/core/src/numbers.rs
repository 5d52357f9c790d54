//! Hultman numbers `H(n, k)` by four independent routes, and the moment
//! polynomials `p_n(N) = Σ_g H(n, n+1-2g) N^{n+1-2g}`.
//!
//! `H(n, k)` vanishes whenever `n - k` is even, so tables are stored by
//! genus: `h_g(n) = H(n, n + 1 - 2g)` for `0 <= g <= n/2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{exact_div, factorial, IntPolynomial, Variable};
use crate::error::{Error, Result};
use crate::gluing::UnionFind;
use crate::perm::{par_fold_permutations, Permutation};

/// Unsigned Stirling numbers of the first kind, `S(n, k)` for `k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Builds the triangle with `S(n+1, k) = S(n, k-1) + n S(n, k)`.
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k > 0 {
                        prev[k - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    let here = prev.get(k).map_or_else(BigInt::zero, |s| s * n);
                    left + here
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`; zero outside the triangle.
    ///
    /// # Panics
    /// If `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        assert!(
            n <= self.n_max(),
            "S({n}, ·) is beyond the table (n_max = {})",
            self.n_max()
        );
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

pub fn stirling_table(n_max: usize) -> StirlingTable {
    StirlingTable::new(n_max)
}

/// `H(n, k) = 2 S(n+2, k) / ((n+1)(n+2))` when `n - k` is odd, else 0.
pub fn hultman_via_stirling(n: usize, k: usize, table: &StirlingTable) -> Result<BigInt> {
    if table.n_max() < n + 2 {
        return Err(Error::InvalidInput(format!(
            "Stirling table up to {} cannot give H({n}, ·); need n_max >= {}",
            table.n_max(),
            n + 2
        )));
    }
    if k < 1 || k > n + 1 {
        return Err(Error::InvalidInput(format!(
            "k = {k} is outside 1..={}",
            n + 1
        )));
    }
    if (n + k).is_multiple_of(2) {
        return Ok(BigInt::zero());
    }
    let numerator = table.get(n + 2, k) * 2u32;
    let denominator = BigInt::from((n + 1) * (n + 2));
    exact_div(&numerator, &denominator).ok_or_else(|| {
        Error::Inconsistency(format!(
            "2 S({}, {k}) = {numerator} is not divisible by {denominator}",
            n + 2
        ))
    })
}

/// Which algorithm produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSource {
    Brute,
    Stirling,
    Recursion,
}

impl TableSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TableSource::Brute => "brute",
            TableSource::Stirling => "stirling",
            TableSource::Recursion => "recursion",
        }
    }
}

impl fmt::Display for TableSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `H(n, k)` for `0 <= n <= n_max`, `1 <= k <= n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HultmanTable {
    /// `by_genus[n][g] = h_g(n) = H(n, n + 1 - 2g)`
    by_genus: Vec<Vec<BigInt>>,
    source: TableSource,
}

impl HultmanTable {
    fn from_genus_rows(source: TableSource, by_genus: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(by_genus
            .iter()
            .enumerate()
            .all(|(n, r)| r.len() == n / 2 + 1));
        HultmanTable { by_genus, source }
    }

    /// Rebuilds a table from dense rows, `rows[n][k - 1] = H(n, k)`, checking
    /// shape, parity, `H(n, n+1) = 1` and the row sums `n!`.
    pub fn from_dense_rows(source: TableSource, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("table has no rows".into()));
        }
        let mut by_genus = Vec::with_capacity(rows.len());
        for (n, row) in rows.into_iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidInput(format!(
                    "row n = {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
            for (i, h) in row.iter().enumerate() {
                let k = i + 1;
                if (n + k) % 2 == 0 && !h.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "H({n}, {k}) = {h} but n - k is even"
                    )));
                }
            }
            if !row[n].is_one() {
                return Err(Error::InvalidInput(format!(
                    "H({n}, {}) = {}, expected 1",
                    n + 1,
                    row[n]
                )));
            }
            let sum: BigInt = row.iter().sum();
            if sum != factorial(n) {
                return Err(Error::InvalidInput(format!(
                    "row n = {n} sums to {sum}, expected {n}! = {}",
                    factorial(n)
                )));
            }
            by_genus.push((0..=n / 2).map(|g| row[n - 2 * g].clone()).collect());
        }
        Ok(Self::from_genus_rows(source, by_genus))
    }

    pub fn n_max(&self) -> usize {
        self.by_genus.len() - 1
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    /// `H(n, k)`; zero for `k` outside `1..=n+1` or `n - k` even.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k < 1 || k > n + 1 || (n + k).is_multiple_of(2) {
            return BigInt::zero();
        }
        self.h(n, (n + 1 - k) / 2)
    }

    /// `h_g(n)`; zero when `2g > n`.
    pub fn h(&self, n: usize, g: usize) -> BigInt {
        self.by_genus[n].get(g).cloned().unwrap_or_default()
    }

    /// `H(n, 1), …, H(n, n + 1)`.
    pub fn dense_row(&self, n: usize) -> Vec<BigInt> {
        (1..=n + 1).map(|k| self.get(n, k)).collect()
    }

    pub fn genus_row(&self, n: usize) -> &[BigInt] {
        &self.by_genus[n]
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.by_genus[n].iter().sum()
    }

    /// Same entries, regardless of which algorithm produced them.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.by_genus == other.by_genus
    }

    /// First `(n, k)` where the two tables differ, over their common range.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let n_max = self.n_max().min(other.n_max());
        (0..=n_max)
            .flat_map(|n| (1..=n + 1).map(move |k| (n, k)))
            .find(|&(n, k)| self.get(n, k) != other.get(n, k))
    }
}

/// Tallies the number of alternating cycles over every permutation.
pub fn hultman_table_brute(n_max: usize, cap: usize) -> Result<HultmanTable> {
    let mut by_genus = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let tally = par_fold_permutations(
            n,
            cap,
            || (vec![0u64; n / 2 + 1], crate::perm::CycleScratch::default()),
            |(acc, scratch), pi| {
                let k = scratch.alternating_cycle_count(pi.values());
                acc[(n + 1 - k) / 2] += 1;
            },
            |(mut a, s), (b, _)| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                (a, s)
            },
        )?;
        by_genus.push(tally.0.into_iter().map(BigInt::from).collect());
    }
    Ok(HultmanTable::from_genus_rows(TableSource::Brute, by_genus))
}

/// The whole table from the Stirling closed form.
pub fn hultman_table_via_stirling(n_max: usize) -> Result<HultmanTable> {
    let stirling = StirlingTable::new(n_max + 2);
    let by_genus = (0..=n_max)
        .map(|n| {
            (0..=n / 2)
                .map(|g| hultman_via_stirling(n, n + 1 - 2 * g, &stirling))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HultmanTable::from_genus_rows(
        TableSource::Stirling,
        by_genus,
    ))
}

/// `h_g(n)` from
/// `(n+2) h_g(n) = (2n+1) h_g(n-1) - (n-1) h_g(n-2) + n²(n-1) h_{g-1}(n-2)`,
/// seeded by `h_0(0) = 1`, with every division by `n + 2` checked.
pub fn h_table_via_recursion(n_max: usize) -> Result<HultmanTable> {
    let mut by_genus: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let h = |rows: &[Vec<BigInt>], n: isize, g: isize| -> BigInt {
        if n < 0 || g < 0 {
            return BigInt::zero();
        }
        rows[n as usize]
            .get(g as usize)
            .cloned()
            .unwrap_or_default()
    };
    for n in 1..=n_max {
        let ni = n as isize;
        let row = (0..=n / 2)
            .map(|g| {
                let gi = g as isize;
                let rhs = h(&by_genus, ni - 1, gi) * (2 * n + 1)
                    - h(&by_genus, ni - 2, gi) * (n - 1)
                    + h(&by_genus, ni - 2, gi - 1) * (n * n * (n - 1));
                exact_div(&rhs, &BigInt::from(n + 2)).ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "(n+2) h_{g}({n}) = {rhs} is not divisible by {}",
                        n + 2
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        by_genus.push(row);
    }
    Ok(HultmanTable::from_genus_rows(
        TableSource::Recursion,
        by_genus,
    ))
}

/// Which route produced a family of moment polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PnSource {
    Recursion,
    Table,
    Wick,
}

impl PnSource {
    pub fn as_str(self) -> &'static str {
        match self {
            PnSource::Recursion => "recursion",
            PnSource::Table => "table",
            PnSource::Wick => "wick",
        }
    }
}

impl fmt::Display for PnSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `p_0(N), …, p_{n_max}(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnFamily {
    polys: Vec<IntPolynomial>,
    source: PnSource,
}

impl PnFamily {
    /// Wraps polynomials after checking the shape every `p_n` must have:
    /// degree `n + 1`, leading coefficient 1, only powers `N^{n+1-2g}`, and
    /// `p_n(1) = n!`.
    pub fn new(source: PnSource, polys: Vec<IntPolynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidInput("empty polynomial family".into()));
        }
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != n as isize + 1 || !p.leading_coeff().is_some_and(One::is_one) {
                return Err(Error::InvalidInput(format!(
                    "p_{n} = {p} must be monic of degree {}",
                    n + 1
                )));
            }
            if let Some(d) = (0..=n + 1).find(|&d| (n + 1 - d) % 2 == 1 && !p.coeff(d).is_zero()) {
                return Err(Error::InvalidInput(format!(
                    "p_{n} has a nonzero N^{d} term"
                )));
            }
            if p.eval(&BigInt::one()) != factorial(n) {
                return Err(Error::InvalidInput(format!("p_{n}(1) != {n}!")));
            }
        }
        let polys = polys.into_iter().map(|p| p.with_var(Variable::N)).collect();
        Ok(PnFamily { polys, source })
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn source(&self) -> PnSource {
        self.source
    }

    pub fn get(&self, n: usize) -> &IntPolynomial {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }
}

/// `(n+2) p_n = (2n+1) N p_{n-1} + (n-1)(n² - N²) p_{n-2}` from
/// `p_0 = N`, `p_1 = N²`.
pub fn p_family_via_recursion(n_max: usize) -> Result<PnFamily> {
    let n_poly = IntPolynomial::from_i64s(&[0, 1]);
    let mut polys = vec![n_poly.clone(), IntPolynomial::from_i64s(&[0, 0, 1])];
    for n in 2..=n_max {
        let a = (&n_poly * &polys[n - 1]).scale(&BigInt::from(2 * n + 1));
        let n2 = BigInt::from(n * n);
        let factor = IntPolynomial::new(vec![n2, BigInt::zero(), BigInt::from(-1)]);
        let b = (&factor * &polys[n - 2]).scale(&BigInt::from(n - 1));
        let sum = &a + &b;
        let p = sum.exact_div(&BigInt::from(n + 2)).ok_or_else(|| {
            Error::Inconsistency(format!("(n+2) p_{n} = {sum} is not divisible by {}", n + 2))
        })?;
        polys.push(p);
    }
    polys.truncate(n_max + 1);
    PnFamily::new(PnSource::Recursion, polys)
}

/// `p_n(N) = Σ_g H(n, n+1-2g) N^{n+1-2g}`, read off a table.
pub fn p_family_from_table(table: &HultmanTable) -> Result<PnFamily> {
    let polys = (0..=table.n_max())
        .map(|n| {
            let mut coeffs = vec![BigInt::zero(); n + 2];
            for (g, h) in table.genus_row(n).iter().enumerate() {
                coeffs[n + 1 - 2 * g] = h.clone();
            }
            IntPolynomial::new(coeffs)
        })
        .collect();
    PnFamily::new(PnSource::Table, polys)
}

/// Number of free index classes after contracting
/// `Tr(X^n X*^n) = Σ x_{i_1 i_2} ⋯ x_{i_n i_{n+1}} x̄_{i_1 i_{2n}} ⋯ x̄_{i_{n+2} i_{n+1}}`
/// with the pairing `π`: the factor `x_{i_j i_{j+1}}` is paired with the
/// conjugate factor at position `α_j = 2n + 1 - π_j`, forcing
/// `i_j = i_{α_j + 1}` and `i_{j+1} = i_{α_j}` (indices mod `2n`).
///
/// The pairing contributes `N` to this power to the Gaussian integral.
pub fn wick_index_classes(pi: &Permutation) -> usize {
    let n = pi.n();
    if n == 0 {
        // Tr(I) = N
        return 1;
    }
    let len = 2 * n;
    // index i_t, t = 1..=2n, stored at t - 1; i_{2n+1} = i_1
    let slot = |t: usize| (t - 1) % len;
    let mut uf = UnionFind::new(len);
    for j in 1..=n {
        let alpha = len + 1 - pi.at(j);
        uf.union(slot(j), slot(alpha + 1));
        uf.union(slot(j + 1), slot(alpha));
    }
    uf.classes()
}

/// `∫ Tr(X^n X*^n) dμ_N` as an exact polynomial in `N`: the sum over all
/// Wick pairings of `N^{index classes}`.
pub fn wick_polynomial(n: usize, cap: usize) -> Result<IntPolynomial> {
    let tally = par_fold_permutations(
        n,
        cap,
        || vec![0u64; n + 2],
        |acc, pi| acc[wick_index_classes(pi)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(IntPolynomial::new(tally.into_iter().map(BigInt::from).collect()).with_var(Variable::N))
}

pub fn p_family_via_wick(n_max: usize, cap: usize) -> Result<PnFamily> {
    let polys = (0..=n_max)
        .map(|n| wick_polynomial(n, cap))
        .collect::<Result<Vec<_>>>()?;
    PnFamily::new(PnSource::Wick, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::glue_polygon;
    use crate::perm::{enumerate_permutations, DEFAULT_ENUMERATION_CAP as CAP};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn n_poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn stirling_examples() {
        let s = stirling_table(8);
        assert_eq!(s.row(3), &[int(0), int(2), int(3), int(1)]);
        assert_eq!(s.get(5, 2), int(50));
        assert_eq!(s.get(0, 0), int(1));
        for n in 1..=8 {
            assert_eq!(s.get(n, n), int(1));
            assert_eq!(s.get(n, 0), int(0));
            assert_eq!(s.row(n).iter().sum::<BigInt>(), factorial(n));
        }
    }

    #[test]
    fn stirling_matches_disjoint_cycle_tally() {
        let s = stirling_table(6);
        for n in 0..=6 {
            let mut tally = vec![0i64; n + 1];
            enumerate_permutations(n, CAP, |p| tally[p.disjoint_cycle_count()] += 1).unwrap();
            let expected: Vec<BigInt> = tally.into_iter().map(BigInt::from).collect();
            assert_eq!(s.row(n), expected.as_slice());
        }
    }

    #[test]
    fn stirling_closed_form_examples() {
        let s = stirling_table(8);
        assert_eq!(hultman_via_stirling(3, 2, &s).unwrap(), int(5));
        assert_eq!(hultman_via_stirling(4, 4, &s).unwrap(), int(0));
        assert_eq!(hultman_via_stirling(4, 1, &s).unwrap(), int(8));
        assert!(hultman_via_stirling(7, 2, &s).is_err());
        assert!(hultman_via_stirling(3, 0, &s).is_err());
    }

    #[test]
    fn brute_rows() {
        let t = hultman_table_brute(6, CAP).unwrap();
        assert_eq!(t.dense_row(0), vec![int(1)]);
        assert_eq!(t.dense_row(2), vec![int(1), int(0), int(1)]);
        assert_eq!(
            t.dense_row(6),
            vec![int(180), int(0), int(469), int(0), int(70), int(0), int(1)]
        );
        assert_eq!(t.source(), TableSource::Brute);
    }

    #[test]
    fn recursion_examples() {
        let t = h_table_via_recursion(8).unwrap();
        assert_eq!(t.h(4, 1), int(15));
        assert_eq!(t.h(3, 2), int(0));
        assert_eq!(t.h(4, 2), int(8));
    }

    #[test]
    fn sources_agree_through_nine() {
        let brute = hultman_table_brute(9, CAP).unwrap();
        let stirling = hultman_table_via_stirling(9).unwrap();
        let recursion = h_table_via_recursion(9).unwrap();
        assert!(
            brute.same_entries(&stirling),
            "{:?}",
            brute.first_difference(&stirling)
        );
        assert!(
            brute.same_entries(&recursion),
            "{:?}",
            brute.first_difference(&recursion)
        );
        assert_ne!(brute, recursion, "source tags differ");
    }

    #[test]
    fn table_invariants_to_thirty() {
        for t in [
            hultman_table_via_stirling(30).unwrap(),
            h_table_via_recursion(30).unwrap(),
        ] {
            for n in 0..=30 {
                assert_eq!(t.row_sum(n), factorial(n));
                assert!(t.get(n, n + 1).is_one());
                for k in (1..=n + 1).filter(|k| (n + k) % 2 == 0) {
                    assert!(t.get(n, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn dense_round_trip_and_validation() {
        let t = h_table_via_recursion(9).unwrap();
        let rows: Vec<_> = (0..=9).map(|n| t.dense_row(n)).collect();
        let back = HultmanTable::from_dense_rows(TableSource::Recursion, rows.clone()).unwrap();
        assert_eq!(back, t);

        let mut bad_sum = rows.clone();
        bad_sum[6][0] += 1;
        assert!(HultmanTable::from_dense_rows(TableSource::Recursion, bad_sum).is_err());

        let mut bad_parity = rows.clone();
        bad_parity[4][1] = int(1);
        bad_parity[4][0] -= 1;
        let err = HultmanTable::from_dense_rows(TableSource::Recursion, bad_parity).unwrap_err();
        assert!(err.to_string().contains("even"), "{err}");

        let mut bad_shape = rows;
        bad_shape[3].pop();
        assert!(HultmanTable::from_dense_rows(TableSource::Recursion, bad_shape).is_err());
    }

    #[test]
    fn pn_recursion_examples() {
        let p = p_family_via_recursion(9).unwrap();
        assert_eq!(p.get(1), &n_poly(&[0, 0, 1]));
        assert_eq!(p.get(5), &n_poly(&[0, 0, 84, 0, 35, 0, 1]));
        assert_eq!(
            p.get(9),
            &n_poly(&[0, 0, 193248, 0, 152900, 0, 16401, 0, 330, 0, 1])
        );
        assert_eq!(p_family_via_recursion(0).unwrap().n_max(), 0);
    }

    #[test]
    fn pn_from_tables() {
        let brute = p_family_from_table(&hultman_table_brute(3, CAP).unwrap()).unwrap();
        assert_eq!(brute.get(3), &n_poly(&[0, 0, 5, 0, 1]));
        let zero = HultmanTable::from_dense_rows(TableSource::Brute, vec![vec![int(1)]]).unwrap();
        assert_eq!(p_family_from_table(&zero).unwrap().get(0), &n_poly(&[0, 1]));
        let rec = p_family_from_table(&h_table_via_recursion(8).unwrap()).unwrap();
        assert_eq!(
            rec.get(8),
            &n_poly(&[0, 8064, 0, 26060, 0, 5985, 0, 210, 0, 1])
        );
    }

    #[test]
    fn pn_family_rejects_malformed() {
        assert!(PnFamily::new(PnSource::Table, vec![n_poly(&[0, 2])]).is_err());
        assert!(PnFamily::new(PnSource::Table, vec![n_poly(&[1, 1])]).is_err());
        assert!(PnFamily::new(PnSource::Table, vec![n_poly(&[0, 1]), n_poly(&[0, 1, 1])]).is_err());
    }

    #[test]
    fn wick_examples() {
        assert_eq!(wick_polynomial(0, CAP).unwrap(), n_poly(&[0, 1]));
        assert_eq!(wick_polynomial(2, CAP).unwrap(), n_poly(&[0, 1, 0, 1]));
        assert_eq!(
            wick_polynomial(7, CAP).unwrap(),
            n_poly(&[0, 0, 3044, 0, 1869, 0, 126, 0, 1])
        );
    }

    #[test]
    fn wick_classes_equal_glued_vertices() {
        for n in 0..=7 {
            enumerate_permutations(n, CAP, |pi| {
                assert_eq!(
                    wick_index_classes(pi),
                    glue_polygon(pi).vertex_orbits,
                    "{pi}"
                );
            })
            .unwrap();
        }
    }

    #[test]
    fn wick_matches_recursion() {
        let rec = p_family_via_recursion(8).unwrap();
        let wick = p_family_via_wick(8, CAP).unwrap();
        assert_eq!(rec.polys(), wick.polys());
    }

    #[test]
    fn recursion_extends_with_exact_divisions() {
        let t = h_table_via_recursion(200).unwrap();
        assert_eq!(t.row_sum(200), factorial(200));
        let p = p_family_via_recursion(60).unwrap();
        for n in [30, 45, 60] {
            let from_table: Vec<BigInt> = (0..=n / 2).map(|g| t.h(n, g)).collect();
            let from_poly: Vec<BigInt> =
                (0..=n / 2).map(|g| p.get(n).coeff(n + 1 - 2 * g)).collect();
            assert_eq!(from_table, from_poly);
        }
    }
}
