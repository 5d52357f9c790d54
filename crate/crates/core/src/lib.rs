//! Hultman numbers, computed and cross-checked several independent ways.
//!
//! `H(n, k)` counts permutations of `S_n` whose cycle graph splits into
//! exactly `k` alternating cycles. This crate computes them by
//!
//! * brute force over `S_n` ([`numbers::hultman_table_brute`]),
//! * the Stirling closed form ([`numbers::hultman_via_stirling`]),
//! * a three-term recursion in `n` ([`numbers::h_table_via_recursion`]),
//! * a recursion for the moment polynomials `p_n(N)`
//!   ([`numbers::p_family_via_recursion`]),
//! * counting genera of polygon gluings ([`gluing`]) and Wick pairings
//!   ([`numbers::wick_polynomial`]),
//!
//! and checks them against the generating functions in [`genfunc`] and a
//! Monte Carlo estimate of a complex Ginibre matrix integral in [`ginibre`].
//! The [`verify`] module bundles all of these into suites.

pub mod algebra;
pub mod error;
pub mod genfunc;
pub mod ginibre;
pub mod gluing;
pub mod numbers;
pub mod perm;
pub mod report;
pub mod verify;

pub use algebra::{BigRational, IntPolynomial, RationalSeries, Variable};
pub use error::{Error, Result};
pub use genfunc::PgPolynomial;
pub use ginibre::{McConfig, McEstimate};
pub use gluing::GluingResult;
pub use numbers::{HultmanTable, PnFamily, StirlingTable, TableSource};
pub use perm::{AltCycleDecomposition, Permutation, DEFAULT_ENUMERATION_CAP};
