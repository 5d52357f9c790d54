//! Exact arithmetic: dense integer polynomials, truncated rational power
//! series, and the handful of integer sequences the rest of the crate needs.
//!
//! Nothing here touches floating point. Zero polynomials have an empty
//! coefficient vector and degree `-1`; series carry an explicit truncation
//! order and refuse to combine with a series of a different order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Display label of a polynomial's variable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Variable {
    #[default]
    X,
    N,
}

impl Variable {
    pub fn as_str(self) -> &'static str {
        match self {
            Variable::X => "x",
            Variable::N => "N",
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `var^i`. The highest stored coefficient
/// is always nonzero, so structurally equal polynomials compare equal.
/// The variable is a display label only and does not take part in equality.
#[derive(Debug, Clone, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    var: Variable,
}

impl PartialEq for IntPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for IntPolynomial {}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial {
            coeffs,
            var: Variable::X,
        }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · var^degree`
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `(1 - x)^k`, expanded.
    pub fn one_minus_x_pow(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut c = BigInt::one();
        for j in 0..=k {
            coeffs.push(if j % 2 == 0 { c.clone() } else { -c.clone() });
            c = c * (k - j) / (j + 1);
        }
        Self::new(coeffs)
    }

    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `var^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at `-1`.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i)
            .collect();
        Self::new(coeffs).with_var(self.var)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect()).with_var(self.var)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs).with_var(self.var)
    }

    /// Divide by `var^k`, or `None` if any of the low `k` coefficients is nonzero.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Some(Self::new(coeffs).with_var(self.var))
    }

    /// Divide every coefficient by `d`, or `None` if some division leaves a remainder.
    pub fn exact_div(&self, d: &BigInt) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Self::new(coeffs).with_var(self.var))
    }

    /// Keep only the coefficients of degree `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        let coeffs = self.coeffs.iter().take(max_degree + 1).cloned().collect();
        Self::new(coeffs).with_var(self.var)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::new(coeffs).with_var(self.var)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::new(coeffs).with_var(self.var)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect()).with_var(self.var)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero().with_var(self.var);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs).with_var(self.var)
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

/// Power series in `x` with exact rational coefficients, truncated after
/// `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    /// Series from the given low-order coefficients, zero-padded up to `order`.
    ///
    /// Supplying more than `order + 1` coefficients is an error rather than a
    /// silent truncation.
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::InvalidInput(format!(
                "{} coefficients do not fit a series of order {order}",
                coeffs.len()
            )));
        }
        coeffs.resize(order + 1, BigRational::zero());
        Ok(RationalSeries { order, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        RationalSeries {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The polynomial `p` viewed as a series; terms past `order` are dropped.
    pub fn from_poly(p: &IntPolynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in p.coeffs().iter().enumerate().take(order + 1) {
            s.coeffs[i] = BigRational::from_integer(c.clone());
        }
        s
    }

    pub fn from_integers(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Result<Self> {
        Self::new(
            order,
            coeffs.into_iter().map(BigRational::from_integer).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`.
    ///
    /// # Panics
    /// If `i` exceeds the truncation order: the value is unknown, not zero.
    pub fn coeff(&self, i: usize) -> &BigRational {
        assert!(
            i <= self.order,
            "coefficient x^{i} is beyond the truncation order {}",
            self.order
        );
        &self.coeffs[i]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RationalSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RationalSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RationalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divide by `x^k`. The low `k` coefficients must vanish; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::InvalidInput(format!(
                "cannot divide a series of order {} by x^{k}",
                self.order
            )));
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Inconsistency(format!(
                "coefficient of x^{i} is {} but must vanish before dividing by x^{k}",
                self.coeffs[i]
            )));
        }
        Ok(RationalSeries {
            order: self.order - k,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Integer coefficients, or `None` if any coefficient is a proper fraction.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Sign of the linear term in `(1 ± x)^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSign {
    Plus,
    Minus,
}

/// Expansion of `(1 ± x)^exponent` up to `x^order`, for any integer exponent.
///
/// The coefficient of `x^k` is `binom(exponent, k) · (±1)^k` with the
/// generalized binomial coefficient, so `(1 - x)^{-N}` comes out as
/// `binom(N + k - 1, k)`.
pub fn binom_series(sign: BaseSign, exponent: i64, order: usize) -> RationalSeries {
    let e = BigInt::from(exponent);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = BigInt::one();
    for k in 0..=order {
        let signed = match sign {
            BaseSign::Minus if k % 2 == 1 => -c.clone(),
            _ => c.clone(),
        };
        coeffs.push(BigRational::from_integer(signed));
        // binom(e, k+1) = binom(e, k) · (e - k) / (k + 1), always exact
        c = c * (&e - k) / (k + 1);
    }
    RationalSeries { order, coeffs }
}

/// Coefficients `c_j` with `p(x) = Σ_j c_j (1 - x)^j`.
///
/// Returned in canonical form: the last entry is nonzero, and the zero
/// polynomial yields an empty vector.
pub fn poly_in_one_minus_x(p: &IntPolynomial) -> Vec<BigInt> {
    // Substitute x = 1 - y and expand in y.
    let one_minus_y = IntPolynomial::from_i64s(&[1, -1]);
    p.coeffs()
        .iter()
        .rev()
        .fold(IntPolynomial::zero(), |acc, c| {
            &(&acc * &one_minus_y) + &IntPolynomial::constant(c.clone())
        })
        .into_coeffs()
}

/// `m!! = 1 · 3 · 5 ⋯ m` for odd positive `m`.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < 1 || m % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "double factorial is defined here for odd positive m, got {m}"
        )));
    }
    Ok((1..=m).step_by(2).map(BigInt::from).product())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}
