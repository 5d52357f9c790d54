//! Generating functions of the Hultman numbers.
//!
//! * `F(x, N) = Σ_n p_n(N) x^n / n! = ((1-x)^{-N} - (1+x)^N) / x²`
//! * `H_g(x) = Σ_n h_g(n) x^n = P_g(x) / (1-x)^{4g+1}` for `g >= 1`, with
//!   `H_0(x) = 1/(1-x)`.
//!
//! The numerators `P_g` are computed two ways. [`pg_via_truncation`] reads
//! them off the tables: multiply the series `H_g` by `(1-x)^{4g+1}` and check
//! that everything past degree `4g-2` vanishes. [`pg_via_ode_step`] never
//! looks at a table. It integrates the first-order ODE
//!
//! ```text
//! (1-x)² H̃_g' + (1-x) H̃_g = x⁴ H̃_{g-1}''' + 2x³ H̃_{g-1}'',   H̃_g(0) = 0
//! ```
//!
//! for `H̃_g = x² H_g` by partial fractions in `1/(1-x)`, so `P_g` follows
//! from `P_{g-1}` alone.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    binom_series, double_factorial, factorial, poly_in_one_minus_x, BaseSign, BigRational,
    IntPolynomial, RationalSeries,
};
use crate::error::{Error, Result};
use crate::numbers::{HultmanTable, PnFamily};
use crate::report::{all_passed, Check};

/// Extra coefficients past the expected degree of `P_g` that must vanish
/// when it is read off a truncated series.
pub const GUARD_COEFFICIENTS: usize = 8;

/// Series of `F(x, N)` up to `x^order`, for a fixed integer `N >= 1`.
pub fn f_series(n_dim: u64, order: usize) -> Result<RationalSeries> {
    if n_dim == 0 {
        return Err(Error::InvalidInput("N must be a positive integer".into()));
    }
    let e = n_dim as i64;
    let inverse = binom_series(BaseSign::Minus, -e, order + 2);
    let power = binom_series(BaseSign::Plus, e, order + 2);
    inverse.sub(&power)?.shift_down(2)
}

/// Per-order outcome of comparing `n! [x^n] F(x, N)` with `p_n(N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FOrderCheck {
    pub n: usize,
    pub points: usize,
    pub agree: bool,
    /// Enough agreeing points (`>= n + 2`) to pin down the degree-`n+1`
    /// polynomial, so the identity holds for every `N`.
    pub certified: bool,
    pub mismatch: Option<FMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMismatch {
    pub n_dim: u64,
    pub series: String,
    pub polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FReport {
    pub order: usize,
    pub n_values: Vec<u64>,
    pub orders: Vec<FOrderCheck>,
    pub passed: bool,
    pub certified_through: Option<usize>,
}

/// Compare the closed form of `F` with the moment polynomials at each `N`.
pub fn verify_f_against_pn(n_values: &[u64], order: usize, pn: &PnFamily) -> Result<FReport> {
    if pn.n_max() < order {
        return Err(Error::InvalidInput(format!(
            "polynomials reach n = {}, need {order}",
            pn.n_max()
        )));
    }
    let distinct: BTreeSet<u64> = n_values.iter().copied().collect();
    let series = distinct
        .iter()
        .map(|&nd| Ok((nd, f_series(nd, order)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut orders = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let scale = BigRational::from_integer(factorial(n));
        let mut mismatch = None;
        for (nd, f) in &series {
            let lhs = f.coeff(n) * &scale;
            let rhs = BigRational::from_integer(pn.get(n).eval(&BigInt::from(*nd)));
            if lhs != rhs {
                mismatch = Some(FMismatch {
                    n_dim: *nd,
                    series: lhs.to_string(),
                    polynomial: rhs.to_string(),
                });
                break;
            }
        }
        let agree = mismatch.is_none();
        orders.push(FOrderCheck {
            n,
            points: distinct.len(),
            agree,
            certified: agree && distinct.len() >= n + 2,
            mismatch,
        });
    }
    let certified_through = orders
        .iter()
        .take_while(|o| o.certified)
        .last()
        .map(|o| o.n);
    Ok(FReport {
        order,
        n_values: distinct.into_iter().collect(),
        passed: orders.iter().all(|o| o.agree),
        orders,
        certified_through,
    })
}

/// `H_g(x)` truncated after `x^order`.
pub fn hg_series(g: usize, order: usize, table: &HultmanTable) -> Result<RationalSeries> {
    if table.n_max() < order {
        return Err(Error::InvalidInput(format!(
            "table reaches n = {}, need {order}",
            table.n_max()
        )));
    }
    RationalSeries::from_integers(order, (0..=order).map(|n| table.h(n, g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PgProvenance {
    SeriesTruncation,
    OdeStep,
}

impl fmt::Display for PgProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PgProvenance::SeriesTruncation => "series-truncation",
            PgProvenance::OdeStep => "ode-step",
        })
    }
}

/// Numerator `P_g(x)` of `H_g(x) = P_g(x) / (1-x)^{4g+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgPolynomial {
    pub g: usize,
    pub poly: IntPolynomial,
    pub provenance: PgProvenance,
}

impl PgPolynomial {
    /// `P_0 = 1`.
    pub fn base() -> Self {
        PgPolynomial {
            g: 0,
            poly: IntPolynomial::one(),
            provenance: PgProvenance::OdeStep,
        }
    }

    /// Expected degree: `4g - 2`, or 0 for `g = 0`.
    pub fn expected_degree(g: usize) -> usize {
        if g == 0 {
            0
        } else {
            4 * g - 2
        }
    }

    /// Denominator exponent `4g + 1`.
    pub fn pole_order(&self) -> usize {
        4 * self.g + 1
    }
}

/// Smallest table that [`pg_via_truncation`] accepts for genus `g`.
pub fn truncation_table_size(g: usize) -> usize {
    PgPolynomial::expected_degree(g) + GUARD_COEFFICIENTS
}

pub fn pg_via_truncation(g: usize, table: &HultmanTable) -> Result<PgPolynomial> {
    let degree = PgPolynomial::expected_degree(g);
    let order = degree + GUARD_COEFFICIENTS;
    let series = hg_series(g, order, table)?;
    let denominator = RationalSeries::from_poly(&IntPolynomial::one_minus_x_pow(4 * g + 1), order);
    let product = series.mul(&denominator)?;
    let coeffs = product.integer_coeffs().ok_or_else(|| {
        Error::Inconsistency(format!(
            "(1-x)^{} H_{g}(x) has non-integer coefficients",
            4 * g + 1
        ))
    })?;
    if let Some(i) = (degree + 1..=order).find(|&i| !coeffs[i].is_zero()) {
        return Err(Error::Inconsistency(format!(
            "P_{g} should have degree {degree} but the coefficient of x^{i} is {}",
            coeffs[i]
        )));
    }
    Ok(PgPolynomial {
        g,
        poly: IntPolynomial::new(coeffs[..=degree].to_vec()),
        provenance: PgProvenance::SeriesTruncation,
    })
}

/// `numerator / (1-x)^pole`
#[derive(Debug, Clone)]
struct OverOneMinusX {
    numerator: IntPolynomial,
    pole: usize,
}

impl OverOneMinusX {
    /// `(A / (1-x)^β)' = ((1-x) A' + β A) / (1-x)^{β+1}`
    fn derivative(&self) -> Self {
        let one_minus_x = IntPolynomial::from_i64s(&[1, -1]);
        let numerator = &(&one_minus_x * &self.numerator.derivative())
            + &self.numerator.scale(&BigInt::from(self.pole));
        OverOneMinusX {
            numerator,
            pole: self.pole + 1,
        }
    }
}

/// Intermediate quantities of one induction step `P_{g-1} → P_g`.
#[derive(Debug, Clone)]
pub struct OdeStep {
    pub g: usize,
    /// Numerator of `H̃_{g-1}'` over `(1-x)^{4g-2}`.
    pub first_derivative: IntPolynomial,
    /// Numerator of `H̃_{g-1}''` over `(1-x)^{4g-1}`.
    pub second_derivative: IntPolynomial,
    /// `Q_g` with `(x⁴ H̃_{g-1}''' + 2x³ H̃_{g-1}'') / (1-x)³ = Q_g / (1-x)^{4g+3}`.
    pub q: IntPolynomial,
    /// `residues[i]` is the coefficient of `1/(1-x)^i` in the partial
    /// fraction expansion of `Q_g / (1-x)^{4g+3}`.
    pub residues: Vec<BigInt>,
    /// `P̃_g = x² P_g`.
    pub p_tilde: IntPolynomial,
    pub result: PgPolynomial,
}

/// Runs one step of the ODE induction, keeping every intermediate.
pub fn ode_step(prev: &PgPolynomial) -> Result<OdeStep> {
    let g = prev.g + 1;
    let one_minus_x = IntPolynomial::from_i64s(&[1, -1]);

    let h_tilde = OverOneMinusX {
        numerator: prev.poly.shift_up(2),
        pole: 4 * g - 3,
    };
    let d1 = h_tilde.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();

    // x⁴ H''' + 2x³ H'' over (1-x)^{4g}, then divided by (1-x)³.
    let q = &d3.numerator.shift_up(4)
        + &(&one_minus_x * &d2.numerator.shift_up(3)).scale(&BigInt::from(2));
    let pole = d3.pole + 3;
    debug_assert_eq!(pole, 4 * g + 3);

    let in_powers = poly_in_one_minus_x(&q);
    // Q / (1-x)^B = Σ_j c_j (1-x)^{j-B}; only poles of order >= 3 may appear.
    if in_powers.len() > pole - 2 {
        return Err(Error::Inconsistency(format!(
            "Q_{g} has degree {} > {}, the integral would not be rational",
            q.degree(),
            pole - 3
        )));
    }
    let mut residues = vec![BigInt::zero(); pole + 1];
    for (j, c) in in_powers.iter().enumerate() {
        residues[pole - j] = c.clone();
    }

    // Integrate term by term, fixing the constant by H̃_g(0) = 0:
    // H̃_g / (1-x) = Σ_{i>=3} r_i/(i-1) ((1-x)^{-(i-1)} - 1),
    // and multiply through by (1-x)^{4g+2}.
    let top = 4 * g + 2;
    let mut p_tilde = vec![BigRational::zero(); top + 1];
    let full = IntPolynomial::one_minus_x_pow(top);
    for (i, r) in residues.iter().enumerate().skip(3) {
        if r.is_zero() {
            continue;
        }
        let weight = BigRational::new(r.clone(), BigInt::from(i - 1));
        let term = &IntPolynomial::one_minus_x_pow(top + 1 - i) - &full;
        for (d, c) in term.coeffs().iter().enumerate() {
            p_tilde[d] += &weight * BigRational::from_integer(c.clone());
        }
    }
    let p_tilde = p_tilde
        .into_iter()
        .enumerate()
        .map(|(d, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Inconsistency(format!(
                    "coefficient of x^{d} in x² P_{g} is {c}, not an integer"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let p_tilde = IntPolynomial::new(p_tilde);
    if !p_tilde.coeff(0).is_zero() {
        return Err(Error::Inconsistency(format!(
            "x² P_{g} has constant term {}",
            p_tilde.coeff(0)
        )));
    }
    let poly = p_tilde.shift_down(2).ok_or_else(|| {
        Error::Inconsistency(format!(
            "x² P_{g} has a nonzero x term: {}",
            p_tilde.coeff(1)
        ))
    })?;
    Ok(OdeStep {
        g,
        first_derivative: d1.numerator,
        second_derivative: d2.numerator,
        q,
        residues,
        p_tilde,
        result: PgPolynomial {
            g,
            poly,
            provenance: PgProvenance::OdeStep,
        },
    })
}

pub fn pg_via_ode_step(prev: &PgPolynomial) -> Result<PgPolynomial> {
    Ok(ode_step(prev)?.result)
}

/// `P_0, …, P_{g_max}` by chaining the ODE step from `P_0 = 1`.
pub fn pg_chain_via_ode(g_max: usize) -> Result<Vec<PgPolynomial>> {
    let mut out = vec![PgPolynomial::base()];
    for _ in 0..g_max {
        let next = pg_via_ode_step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `P_0, …, P_{g_max}` read off a table of `h_g(n)`.
pub fn pg_list_via_truncation(g_max: usize, table: &HultmanTable) -> Result<Vec<PgPolynomial>> {
    (0..=g_max).map(|g| pg_via_truncation(g, table)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgPropertyReport {
    pub g: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Observed, not guaranteed: every coefficient between the valuation and
    /// the degree is positive.
    pub positive_coefficients: bool,
}

/// Checks the shape of `P_g`: valuation `2g`, degree `4g - 2`,
/// `a_{g,2g} = (2g)!/(g+1)`, `a_{g,4g-2} = 1` and `P_g(1) = (4g-1)!!/(2g+1)`.
pub fn verify_pg_properties(p: &PgPolynomial) -> Result<PgPropertyReport> {
    let g = p.g;
    if g == 0 {
        return Err(Error::InvalidInput(
            "properties are stated for g >= 1".into(),
        ));
    }
    let poly = &p.poly;
    let mut checks = Vec::new();

    let valuation = poly.valuation().map_or(-1, |v| v as isize);
    checks.push(Check::equal("valuation", &valuation, &(2 * g as isize)));
    checks.push(Check::equal(
        "degree",
        &poly.degree(),
        &(4 * g as isize - 2),
    ));

    let (low_num, low_den) = (factorial(2 * g), BigInt::from(g + 1));
    let low = poly.coeff(2 * g);
    checks.push(Check::new(
        "lowest coefficient (2g)!/(g+1)",
        &low * &low_den == low_num,
        format!(
            "a_{{{g},{}}} = {low}, (2g)!/(g+1) = {low_num}/{low_den}",
            2 * g
        ),
    ));
    checks.push(Check::equal(
        "top coefficient",
        &poly.coeff(4 * g - 2),
        &BigInt::one(),
    ));

    let at_one = poly.eval(&BigInt::one());
    let dfact = double_factorial(4 * g as i64 - 1)?;
    let den = BigInt::from(2 * g + 1);
    checks.push(Check::new(
        "value at 1 is (4g-1)!!/(2g+1)",
        &at_one * &den == dfact,
        format!("P_{g}(1) = {at_one}, (4g-1)!! = {dfact}, 2g+1 = {den}"),
    ));

    let positive_coefficients = poly.coeffs().iter().skip(2 * g).all(|c| c.is_positive());
    Ok(PgPropertyReport {
        g,
        passed: all_passed(&checks),
        checks,
        positive_coefficients,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgOneRecursionReport {
    pub g_max: usize,
    /// `P_g(1)` for `g = 0..=g_max`, as decimal strings.
    pub values: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// `(2g+1) P_g(1) = (4g-1)(4g-3)(2g-1) P_{g-1}(1)` for `1 <= g <= g_max`.
pub fn verify_pg_one_recursion(pgs: &[PgPolynomial]) -> Result<PgOneRecursionReport> {
    if pgs.len() < 2 || pgs.iter().enumerate().any(|(g, p)| p.g != g) {
        return Err(Error::InvalidInput(
            "need P_0, P_1, … in order, with at least P_1".into(),
        ));
    }
    let values: Vec<BigInt> = pgs.iter().map(|p| p.poly.eval(&BigInt::one())).collect();
    let checks = (1..values.len())
        .map(|g| {
            let lhs = &values[g] * (2 * g + 1);
            let rhs = &values[g - 1] * ((4 * g - 1) * (4 * g - 3) * (2 * g - 1));
            Check::new(
                format!("P_{g}(1) ratio"),
                lhs == rhs,
                format!(
                    "P_{g}(1) = {}, P_{}(1) = {}",
                    values[g],
                    g - 1,
                    values[g - 1]
                ),
            )
        })
        .collect::<Vec<_>>();
    Ok(PgOneRecursionReport {
        g_max: pgs.len() - 1,
        values: values.iter().map(ToString::to_string).collect(),
        passed: all_passed(&checks),
        checks,
    })
}
