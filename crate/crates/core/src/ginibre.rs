//! Monte Carlo estimate of the Ginibre trace moment `E[Tr(X^n X*^n)]`.
//!
//! Entries of `X` are i.i.d. complex Gaussians with `E[x x̄] = 1`: real and
//! imaginary parts are independent centred normals of variance 1/2. The
//! exact value of the moment is `p_n(N)`.
//!
//! Every sample draws from its own ChaCha stream, keyed by `(seed, sample
//! index)`. Samples are grouped into fixed-size chunks whose statistics are
//! merged in chunk order, so the result is bit-identical for any number of
//! threads.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::PnFamily;

pub const DEFAULT_SEED: u64 = 0x0048_554c_544d_414e;
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    /// Matrix dimension `N`.
    #[serde(rename = "N")]
    pub dim: usize,
    /// Moment order `n`.
    #[serde(rename = "n")]
    pub order: usize,
    pub samples: u64,
    pub seed: u64,
}

impl McConfig {
    pub fn new(dim: usize, order: usize, samples: u64, seed: u64) -> Self {
        McConfig {
            dim,
            order,
            samples,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension N must be positive".into(),
            ));
        }
        if self.samples < 2 {
            return Err(Error::InvalidInput("at least 2 samples are needed".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub std_error: f64,
    pub samples: u64,
    #[serde(with = "crate::report::decimal")]
    pub exact_value: BigInt,
    /// `(mean - exact) / std_error`. When `std_error` is 0 this is 0 for an
    /// exact match and `+inf` otherwise.
    pub z_score: f64,
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        CMatrix { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        CMatrix { dim, data }
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                for j in 0..d {
                    data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        CMatrix { dim: d, data }
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let d = self.dim;
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(self.data[j * d + i].conj());
            }
        }
        CMatrix { dim: d, data }
    }

    pub fn pow(&self, n: usize) -> CMatrix {
        (0..n).fold(CMatrix::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// `Σ |a_ij|²`
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `Tr(X^n X*^n)` via `‖X^n‖²_F`.
pub fn trace_moment(x: &CMatrix, n: usize) -> f64 {
    x.pow(n).frobenius_sq()
}

/// One Ginibre matrix from the substream of `(seed, index)`, by Box–Muller.
pub fn sample_matrix(dim: usize, seed: u64, index: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let data = (0..dim * dim)
        .map(|_| {
            // u1 in (0, 1] keeps the logarithm finite
            let u1 = 1.0 - rng.random::<f64>();
            let u2 = rng.random::<f64>();
            // radius for variance 1/2 per component
            let r = (-u1.ln()).sqrt();
            Complex64::from_polar(r, TAU * u2)
        })
        .collect();
    CMatrix { dim, data }
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Streaming moments `(count, mean, M2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn of(values: &[f64]) -> Self {
        let count = values.len() as u64;
        let mean = compensated_sum(values.iter().copied()) / count as f64;
        let m2 = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
        Moments { count, mean, m2 }
    }

    fn merge(self, other: Moments) -> Moments {
        let count = self.count + other.count;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }
}

fn chunk_moments(cfg: &McConfig, chunk: u64) -> Result<Moments> {
    let start = chunk * CHUNK;
    let end = (start + CHUNK).min(cfg.samples);
    let values = (start..end)
        .map(|i| {
            let v = trace_moment(&sample_matrix(cfg.dim, cfg.seed, i), cfg.order);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { sample: i })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Moments::of(&values))
}

pub fn sample_trace_moment(cfg: &McConfig, pn: &PnFamily) -> Result<McEstimate> {
    cfg.validate()?;
    if pn.n_max() < cfg.order {
        return Err(Error::InvalidInput(format!(
            "polynomials reach n = {}, need {}",
            pn.n_max(),
            cfg.order
        )));
    }
    let chunks = cfg.samples.div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|c| chunk_moments(cfg, c))
        .collect::<Result<Vec<_>>>()?;
    let total = parts
        .into_iter()
        .reduce(Moments::merge)
        .expect("samples >= 2");
    if !total.mean.is_finite() || !total.m2.is_finite() {
        return Err(Error::NonFinite {
            sample: cfg.samples - 1,
        });
    }

    let variance = total.m2 / (total.count - 1) as f64;
    let std_error = (variance / total.count as f64).sqrt();
    let exact_value = pn.get(cfg.order).eval(&BigInt::from(cfg.dim));
    let exact = exact_value.to_f64().unwrap_or(f64::INFINITY);
    let z_score = if std_error > 0.0 {
        (total.mean - exact) / std_error
    } else if total.mean == exact {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(McEstimate {
        mean: total.mean,
        std_error,
        samples: total.count,
        exact_value,
        z_score,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub config: McConfig,
    pub estimate: McEstimate,
    pub z_threshold: f64,
    pub passed: bool,
}

pub fn mc_verify(cfg: &McConfig, pn: &PnFamily, z_threshold: f64) -> Result<McReport> {
    let estimate = sample_trace_moment(cfg, pn)?;
    Ok(McReport {
        config: *cfg,
        passed: estimate.z_score.abs() <= z_threshold,
        estimate,
        z_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::p_family_via_recursion;

    fn pn() -> PnFamily {
        p_family_via_recursion(6).unwrap()
    }

    #[test]
    fn frobenius_equals_direct_trace() {
        for dim in 1..=4 {
            for n in 0..=4 {
                let x = sample_matrix(dim, 7, (dim * 10 + n) as u64);
                let xn = x.pow(n);
                let direct = xn.mul(&xn.conj_transpose()).trace();
                let frob = trace_moment(&x, n);
                assert!(direct.im.abs() < 1e-9 * (1.0 + frob));
                assert!(
                    (direct.re - frob).abs() <= 1e-9 * (1.0 + frob),
                    "{direct} vs {frob}"
                );
            }
        }
    }

    #[test]
    fn entries_have_unit_second_moment() {
        let n = 200_000u64;
        let (mut m2, mut re2, mut reim) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let z = sample_matrix(1, 99, i).at(0, 0);
            m2 += z.norm_sqr();
            re2 += z.re * z.re;
            reim += z.re * z.im;
        }
        let n = n as f64;
        assert!((m2 / n - 1.0).abs() < 0.01);
        assert!((re2 / n - 0.5).abs() < 0.01);
        assert!((reim / n).abs() < 0.01);
    }

    #[test]
    fn zero_moment_is_exact() {
        let est = sample_trace_moment(&McConfig::new(1, 0, 100, 1), &pn()).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.exact_value, BigInt::from(1));
        assert_eq!(est.z_score, 0.0);

        let est = sample_trace_moment(&McConfig::new(3, 0, 10, 1), &pn()).unwrap();
        assert_eq!(est.mean, 3.0);
        assert_eq!(est.exact_value, BigInt::from(3));
    }

    #[test]
    fn exact_targets() {
        let est = sample_trace_moment(&McConfig::new(1, 2, 50_000, 3), &pn()).unwrap();
        assert_eq!(est.exact_value, BigInt::from(2));
        assert!(est.z_score.abs() < 5.0, "{est:?}");
        let est = sample_trace_moment(&McConfig::new(2, 3, 10, 3), &pn()).unwrap();
        assert_eq!(est.exact_value, BigInt::from(36));
    }

    #[test]
    fn first_moment_passes() {
        let r = mc_verify(&McConfig::new(1, 1, 10_000, DEFAULT_SEED), &pn(), 4.0).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.estimate.exact_value, BigInt::from(1));
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let cfg = McConfig::new(2, 3, 20_000, 42);
        let a = sample_trace_moment(&cfg, &pn()).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| sample_trace_moment(&cfg, &pn()).unwrap());
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = sample_trace_moment(&McConfig { seed: 43, ..cfg }, &pn()).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn seeds_mostly_within_three_sigma() {
        let inside = (0..20u64)
            .filter(|&s| {
                let est =
                    sample_trace_moment(&McConfig::new(2, 3, 100_000, 1000 + s), &pn()).unwrap();
                est.z_score.abs() <= 3.0
            })
            .count();
        assert!(inside >= 17, "{inside}/20 within 3 sigma");
    }

    #[test]
    fn bad_configs() {
        assert!(sample_trace_moment(&McConfig::new(2, 3, 1, 0), &pn()).is_err());
        assert!(sample_trace_moment(&McConfig::new(0, 3, 10, 0), &pn()).is_err());
        assert!(sample_trace_moment(&McConfig::new(2, 7, 10, 0), &pn()).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let pn = p_family_via_recursion(400).unwrap();
        let err = sample_trace_moment(&McConfig::new(8, 400, 4, 0), &pn).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }), "{err:?}");
    }

    #[test]
    fn moments_merge_like_a_single_pass() {
        let v: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.5).collect();
        let whole = Moments::of(&v);
        let merged = Moments::of(&v[..333]).merge(Moments::of(&v[333..]));
        assert_eq!(whole.count, merged.count);
        assert!((whole.mean - merged.mean).abs() < 1e-12);
        assert!((whole.m2 - merged.m2).abs() < 1e-8 * whole.m2);
    }
}
