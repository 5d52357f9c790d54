//! Verification suites tying every route together.
//!
//! Each suite returns a list of named checks. Reports contain only values
//! derived from the inputs (no timings), so a run can be diffed against
//! another with a different thread count or a warm cache.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{factorial, IntPolynomial};
use crate::error::{Error, Result};
use crate::genfunc::{
    pg_chain_via_ode, pg_list_via_truncation, truncation_table_size, verify_f_against_pn,
    verify_pg_one_recursion, verify_pg_properties, PgPolynomial,
};
use crate::ginibre::{mc_verify, McConfig, DEFAULT_SEED, DEFAULT_Z_THRESHOLD};
use crate::gluing::{count_gluings_by_genus, verify_gluing_bijection};
use crate::numbers::{
    h_table_via_recursion, hultman_table_brute, hultman_table_via_stirling, p_family_from_table,
    p_family_via_recursion, p_family_via_wick, HultmanTable, PnFamily, PnSource, TableSource,
};
use crate::report::{all_passed, Check};

/// `p_0 … p_9`, ascending powers of `N`.
pub const REFERENCE_PN: [&[i64]; 10] = [
    &[0, 1],
    &[0, 0, 1],
    &[0, 1, 0, 1],
    &[0, 0, 5, 0, 1],
    &[0, 8, 0, 15, 0, 1],
    &[0, 0, 84, 0, 35, 0, 1],
    &[0, 180, 0, 469, 0, 70, 0, 1],
    &[0, 0, 3044, 0, 1869, 0, 126, 0, 1],
    &[0, 8064, 0, 26060, 0, 5985, 0, 210, 0, 1],
    &[0, 0, 193248, 0, 152900, 0, 16401, 0, 330, 0, 1],
];

/// `P_0 … P_5` as (valuation, coefficients from the valuation upward).
pub const REFERENCE_PG: [(usize, &[i64]); 6] = [
    (0, &[1]),
    (2, &[1]),
    (4, &[8, 12, 1]),
    (6, &[180, 704, 528, 72, 1]),
    (8, &[8064, 56160, 98124, 53792, 8760, 324, 1]),
    (
        10,
        &[
            604800, 6356160, 19083456, 21676144, 9936360, 1759520, 103040, 1344, 1,
        ],
    ),
];

pub fn reference_pn(n: usize) -> IntPolynomial {
    IntPolynomial::from_i64s(REFERENCE_PN[n])
}

pub fn reference_pg(g: usize) -> IntPolynomial {
    let (shift, coeffs) = REFERENCE_PG[g];
    IntPolynomial::from_i64s(coeffs).shift_up(shift)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    #[serde(rename = "theorem1")]
    Gluing,
    #[serde(rename = "eq1")]
    Tables,
    Pn,
    Pg,
    #[serde(rename = "F")]
    F,
    Mc,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Tables,
        Suite::Gluing,
        Suite::Pn,
        Suite::F,
        Suite::Pg,
        Suite::Mc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Gluing => "theorem1",
            Suite::Tables => "eq1",
            Suite::Pn => "pn",
            Suite::Pg => "pg",
            Suite::F => "F",
            Suite::Mc => "mc",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Slow,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Fast => "fast",
            Tier::Slow => "slow",
        }
    }
}

/// Sizes of every suite at a given tier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierParams {
    pub brute_n_max: usize,
    pub recursion_n_max: usize,
    pub row_sum_n_max: usize,
    pub gluing_n_max: usize,
    pub wick_n_max: usize,
    pub f_n_values: Vec<u64>,
    pub f_order: usize,
    pub ode_g_max: usize,
    pub property_g_max: usize,
    pub mc: Vec<McConfig>,
    pub z_threshold: f64,
}

impl TierParams {
    pub fn new(tier: Tier, seed: u64) -> Self {
        let mc = vec![
            McConfig::new(2, 3, 1_000_000, seed),
            McConfig::new(3, 4, 1_000_000, seed),
        ];
        match tier {
            Tier::Fast => TierParams {
                brute_n_max: 9,
                recursion_n_max: 200,
                row_sum_n_max: 30,
                gluing_n_max: 7,
                wick_n_max: 8,
                f_n_values: (1..=12).collect(),
                f_order: 20,
                ode_g_max: 6,
                property_g_max: 8,
                mc,
                z_threshold: DEFAULT_Z_THRESHOLD,
            },
            Tier::Slow => TierParams {
                brute_n_max: 11,
                recursion_n_max: 200,
                row_sum_n_max: 30,
                gluing_n_max: 9,
                wick_n_max: 9,
                f_n_values: (1..=12).collect(),
                f_order: 20,
                ode_g_max: 8,
                property_g_max: 10,
                mc,
                z_threshold: DEFAULT_Z_THRESHOLD,
            },
        }
    }

    /// Largest `n` any suite enumerates over `S_n`.
    pub fn enumeration_n_max(&self) -> usize {
        self.brute_n_max.max(self.gluing_n_max).max(self.wick_n_max)
    }
}

impl Default for TierParams {
    fn default() -> Self {
        TierParams::new(Tier::Fast, DEFAULT_SEED)
    }
}

/// Where the suites get their tables from. The CLI plugs a cache in here.
pub trait DataSource {
    fn hultman_table(&mut self, source: TableSource, n_max: usize) -> Result<HultmanTable>;
    fn pn_family(&mut self, source: PnSource, n_max: usize) -> Result<PnFamily>;
    fn pg_truncation(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>>;
    fn pg_ode(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>>;
}

/// Computes everything from scratch.
#[derive(Debug, Clone, Copy)]
pub struct Compute {
    pub cap: usize,
}

impl Default for Compute {
    fn default() -> Self {
        Compute {
            cap: crate::perm::DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl DataSource for Compute {
    fn hultman_table(&mut self, source: TableSource, n_max: usize) -> Result<HultmanTable> {
        match source {
            TableSource::Brute => hultman_table_brute(n_max, self.cap),
            TableSource::Stirling => hultman_table_via_stirling(n_max),
            TableSource::Recursion => h_table_via_recursion(n_max),
        }
    }

    fn pn_family(&mut self, source: PnSource, n_max: usize) -> Result<PnFamily> {
        match source {
            PnSource::Recursion => p_family_via_recursion(n_max),
            PnSource::Table => p_family_from_table(&h_table_via_recursion(n_max)?),
            PnSource::Wick => p_family_via_wick(n_max, self.cap),
        }
    }

    fn pg_truncation(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>> {
        let table = h_table_via_recursion(truncation_table_size(g_max))?;
        pg_list_via_truncation(g_max, &table)
    }

    fn pg_ode(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>> {
        pg_chain_via_ode(g_max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite,
            passed: all_passed(&checks),
            checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tier: Tier,
    pub params: TierParams,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

fn table_invariants(t: &HultmanTable, n_max: usize) -> Check {
    let bad = (0..=n_max).find(|&n| {
        t.row_sum(n) != factorial(n)
            || !t.get(n, n + 1).is_one()
            || (1..=n + 1).any(|k| (n + k) % 2 == 0 && !t.get(n, k).is_zero())
    });
    Check::new(
        format!("{} table: row sums n! and parity, n <= {n_max}", t.source()),
        bad.is_none(),
        match bad {
            None => "ok".to_string(),
            Some(n) => format!("row n = {n} violates an invariant"),
        },
    )
}

fn tables_agree(a: &HultmanTable, b: &HultmanTable, n_max: usize) -> Check {
    let diff = a.first_difference(b).filter(|&(n, _)| n <= n_max);
    Check::new(
        format!("{} == {} for n <= {n_max}", a.source(), b.source()),
        diff.is_none() && a.n_max() >= n_max && b.n_max() >= n_max,
        match diff {
            None => "identical".to_string(),
            Some((n, k)) => format!("H({n}, {k}): {} vs {}", a.get(n, k), b.get(n, k)),
        },
    )
}

fn families_agree(a: &PnFamily, b: &PnFamily, n_max: usize) -> Check {
    let diff = (0..=n_max).find(|&n| a.get(n) != b.get(n));
    Check::new(
        format!("p_n {} == {} for n <= {n_max}", a.source(), b.source()),
        diff.is_none(),
        match diff {
            None => "identical".to_string(),
            Some(n) => format!("p_{n}: {} vs {}", a.get(n), b.get(n)),
        },
    )
}

/// Table routes: brute force, Stirling closed form and the `h_g(n)` recursion.
pub fn suite_tables(data: &mut dyn DataSource, p: &TierParams) -> Result<SuiteReport> {
    let brute = data.hultman_table(TableSource::Brute, p.brute_n_max)?;
    let stirling_n = p.brute_n_max.max(p.row_sum_n_max);
    let stirling = data.hultman_table(TableSource::Stirling, stirling_n)?;
    let recursion = data.hultman_table(TableSource::Recursion, p.recursion_n_max)?;

    let mut checks = vec![
        tables_agree(&brute, &stirling, p.brute_n_max),
        tables_agree(&brute, &recursion, p.brute_n_max),
        tables_agree(&stirling, &recursion, stirling_n),
        Check::new(
            format!("recursion extends exactly to n = {}", p.recursion_n_max),
            recursion.n_max() == p.recursion_n_max,
            format!("n_max = {}", recursion.n_max()),
        ),
        table_invariants(&brute, p.brute_n_max),
        table_invariants(&stirling, p.row_sum_n_max),
        table_invariants(&recursion, p.recursion_n_max),
    ];
    let pn = data.pn_family(PnSource::Recursion, p.row_sum_n_max)?;
    let bad = (0..=p.row_sum_n_max).find(|&n| pn.get(n).eval(&BigInt::one()) != factorial(n));
    checks.push(Check::new(
        format!("p_n(1) = n! for n <= {}", p.row_sum_n_max),
        bad.is_none(),
        bad.map_or("ok".into(), |n| format!("fails at n = {n}")),
    ));
    Ok(SuiteReport::new(Suite::Tables, checks))
}

/// Glued vertex orbits against alternating cycles, permutation by permutation.
pub fn suite_gluing(data: &mut dyn DataSource, p: &TierParams, cap: usize) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in 0..=p.gluing_n_max {
        let r = verify_gluing_bijection(n, cap)?;
        checks.push(Check::new(
            format!("vertex orbits == alternating cycles over S_{n}"),
            r.passed,
            match &r.counterexample {
                None => format!("{} permutations", r.permutations),
                Some(c) => format!(
                    "{}: {} orbits, {} cycles",
                    c.permutation, c.vertex_orbits, c.alternating_cycles
                ),
            },
        ));
    }
    let brute = data.hultman_table(TableSource::Brute, p.gluing_n_max)?;
    let bad = (0..=p.gluing_n_max).find_map(|n| {
        let h = match count_gluings_by_genus(n, cap) {
            Ok(h) => h,
            Err(e) => return Some(e.to_string()),
        };
        h.iter()
            .find(|&(&g, &count)| BigInt::from(count) != brute.h(n, g))
            .map(|(g, count)| format!("h_{g}({n}) = {count}, H = {}", brute.h(n, *g)))
    });
    checks.push(Check::new(
        format!("h_g(n) == H(n, n+1-2g) for n <= {}", p.gluing_n_max),
        bad.is_none(),
        bad.unwrap_or_else(|| "ok".into()),
    ));
    Ok(SuiteReport::new(Suite::Gluing, checks))
}

/// Moment polynomials: reference values, recursion, table and Wick routes.
pub fn suite_pn(data: &mut dyn DataSource, p: &TierParams) -> Result<SuiteReport> {
    let rec = data.pn_family(PnSource::Recursion, 9.max(p.wick_n_max).max(p.brute_n_max))?;
    let mut checks: Vec<Check> = (0..REFERENCE_PN.len())
        .map(|n| Check::equal(format!("p_{n} reference"), rec.get(n), &reference_pn(n)))
        .collect();
    let brute = data.hultman_table(TableSource::Brute, p.brute_n_max)?;
    checks.push(families_agree(
        &p_family_from_table(&brute)?,
        &rec,
        p.brute_n_max,
    ));
    let wick = data.pn_family(PnSource::Wick, p.wick_n_max)?;
    checks.push(families_agree(&wick, &rec, p.wick_n_max));
    Ok(SuiteReport::new(Suite::Pn, checks))
}

/// `n! [x^n] F(x, N) = p_n(N)`.
pub fn suite_f(data: &mut dyn DataSource, p: &TierParams) -> Result<SuiteReport> {
    let pn = data.pn_family(PnSource::Recursion, p.f_order)?;
    let r = verify_f_against_pn(&p.f_n_values, p.f_order, &pn)?;
    let mut checks: Vec<Check> = r
        .orders
        .iter()
        .map(|o| {
            Check::new(
                format!("n = {}: n! [x^n] F(x, N) == p_n(N)", o.n),
                o.agree,
                match &o.mismatch {
                    None if o.certified => format!("{} points, identity certified", o.points),
                    None => format!("{} points, spot check", o.points),
                    Some(m) => format!("N = {}: {} vs {}", m.n_dim, m.series, m.polynomial),
                },
            )
        })
        .collect();
    let want = p.f_n_values.len().saturating_sub(2).min(p.f_order);
    checks.push(Check::new(
        "identity certified for every n with >= n + 2 points",
        r.certified_through == Some(want),
        format!("certified through n = {:?}", r.certified_through),
    ));
    Ok(SuiteReport::new(Suite::F, checks))
}

/// Numerators `P_g`: reference values, truncation vs ODE, and their properties.
pub fn suite_pg(data: &mut dyn DataSource, p: &TierParams) -> Result<SuiteReport> {
    let g_max = p
        .property_g_max
        .max(p.ode_g_max)
        .max(REFERENCE_PG.len() - 1);
    let trunc = data.pg_truncation(g_max)?;
    let ode = data.pg_ode(p.ode_g_max)?;
    let mut checks: Vec<Check> = (0..REFERENCE_PG.len())
        .map(|g| Check::equal(format!("P_{g} reference"), &trunc[g].poly, &reference_pg(g)))
        .collect();
    for g in 0..=p.ode_g_max {
        checks.push(Check::equal(
            format!("P_{g} ode == truncation"),
            &ode[g].poly,
            &trunc[g].poly,
        ));
    }
    for pg in &trunc[1..=p.property_g_max] {
        let r = verify_pg_properties(pg)?;
        checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("P_{}: {}", pg.g, c.name);
            c
        }));
        // reported, never enforced
        checks.push(Check::new(
            format!("P_{}: positive coefficients (observed)", pg.g),
            true,
            r.positive_coefficients.to_string(),
        ));
    }
    let r = verify_pg_one_recursion(&trunc[..=p.property_g_max])?;
    checks.extend(r.checks);
    checks.push(Check::new(
        "P_g(1) sequence",
        r.values
            .starts_with(&["1", "1", "21", "1485"].map(String::from)),
        r.values.join(", "),
    ));
    Ok(SuiteReport::new(Suite::Pg, checks))
}

/// Monte Carlo against the exact moment.
pub fn suite_mc(data: &mut dyn DataSource, p: &TierParams) -> Result<SuiteReport> {
    let n_max = p.mc.iter().map(|c| c.order).max().unwrap_or(0);
    let pn = data.pn_family(PnSource::Recursion, n_max)?;
    let checks =
        p.mc.iter()
            .map(|cfg| {
                let r = mc_verify(cfg, &pn, p.z_threshold)?;
                Ok(Check::new(
                    format!(
                        "N = {}, n = {}: |z| <= {}",
                        cfg.dim, cfg.order, p.z_threshold
                    ),
                    r.passed,
                    format!(
                        "exact {}, mean {}, std error {}, z {}, {} samples, seed {}",
                        r.estimate.exact_value,
                        r.estimate.mean,
                        r.estimate.std_error,
                        r.estimate.z_score,
                        r.estimate.samples,
                        cfg.seed
                    ),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new(Suite::Mc, checks))
}

pub fn run_suite(
    suite: Suite,
    data: &mut dyn DataSource,
    params: &TierParams,
    cap: usize,
) -> Result<Vec<SuiteReport>> {
    Ok(match suite {
        Suite::All => {
            return Suite::INDIVIDUAL
                .iter()
                .map(|&s| run_suite(s, data, params, cap).map(|mut v| v.remove(0)))
                .collect()
        }
        Suite::Tables => vec![suite_tables(data, params)?],
        Suite::Gluing => vec![suite_gluing(data, params, cap)?],
        Suite::Pn => vec![suite_pn(data, params)?],
        Suite::F => vec![suite_f(data, params)?],
        Suite::Pg => vec![suite_pg(data, params)?],
        Suite::Mc => vec![suite_mc(data, params)?],
    })
}

/// Run one suite (or all of them) at the given tier. The enumeration cap is
/// raised to whatever the tier needs.
pub fn verify(
    suite: Suite,
    tier: Tier,
    seed: u64,
    data: &mut dyn DataSource,
) -> Result<VerifyReport> {
    let params = TierParams::new(tier, seed);
    let cap = params.enumeration_n_max();
    let suites = run_suite(suite, data, &params, cap)?;
    Ok(VerifyReport {
        tier,
        passed: suites.iter().all(|s| s.passed),
        params,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tables_are_well_formed() {
        let pn = PnFamily::new(PnSource::Table, (0..10).map(reference_pn).collect());
        assert!(pn.is_ok());
        for g in 1..REFERENCE_PG.len() {
            let p = reference_pg(g);
            assert_eq!(p.degree(), 4 * g as isize - 2);
            assert_eq!(p.valuation(), Some(2 * g));
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All].into_iter().chain(Suite::INDIVIDUAL) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_exact_suites_pass() {
        let params = TierParams::default();
        let mut data = Compute::default();
        for suite in [Suite::Tables, Suite::Gluing, Suite::Pn, Suite::F, Suite::Pg] {
            let r = run_suite(suite, &mut data, &params, 9).unwrap().remove(0);
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
            assert!(r.passed, "{suite}: {failed:?}");
        }
    }

    #[test]
    fn a_wrong_table_fails_rather_than_errors() {
        struct Broken(Compute);
        impl DataSource for Broken {
            fn hultman_table(&mut self, s: TableSource, n: usize) -> Result<HultmanTable> {
                let t = self.0.hultman_table(s, n)?;
                if s != TableSource::Brute {
                    return Ok(t);
                }
                // Move weight between genera in row 5 while keeping row sums.
                let mut rows: Vec<_> = (0..=t.n_max()).map(|n| t.dense_row(n)).collect();
                rows[5][1] += 1;
                rows[5][3] -= 1;
                HultmanTable::from_dense_rows(s, rows)
            }
            fn pn_family(&mut self, s: PnSource, n: usize) -> Result<PnFamily> {
                self.0.pn_family(s, n)
            }
            fn pg_truncation(&mut self, g: usize) -> Result<Vec<PgPolynomial>> {
                self.0.pg_truncation(g)
            }
            fn pg_ode(&mut self, g: usize) -> Result<Vec<PgPolynomial>> {
                self.0.pg_ode(g)
            }
        }
        let mut data = Broken(Compute::default());
        let r = suite_tables(&mut data, &TierParams::default()).unwrap();
        assert!(!r.passed);
        assert!(r
            .checks
            .iter()
            .any(|c| !c.passed && c.detail.contains("H(5, 2)")));
    }
}
