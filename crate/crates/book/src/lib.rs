//! The guide in `book/` compiled as documentation, so `cargo test` runs
//! every listing in it.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cycle-graph.md")]
pub mod cycle_graph {}
#[doc = include_str!("../../../book/src/gluings.md")]
pub mod gluings {}
#[doc = include_str!("../../../book/src/hultman-numbers.md")]
pub mod hultman_numbers {}
#[doc = include_str!("../../../book/src/ginibre.md")]
pub mod ginibre {}
#[doc = include_str!("../../../book/src/generating-functions.md")]
pub mod generating_functions {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
