//! Latin hypercubes realizing integer partitions.
//!
//! A partition `h_1 >= ... >= h_n` of N is *m-realized* by an m-dimensional
//! latin hypercube of order N containing pairwise disjoint diagonal
//! subhypercubes of orders `h_1, ..., h_n`. This crate constructs such
//! realizations where constructions are known, proves non-existence where
//! counting conditions apply, verifies candidate arrays, amalgamates squares
//! and cubes into outline objects and realizes outline rectangles back into
//! squares, and falls back on an exhaustive search oracle at tiny orders.
//!
//! Entry points:
//!
//! - [`partition::parse_partition`] / [`partition::Partition`] — the objects
//!   being realized.
//! - [`verify`] — latinity, realization and outline checks; reductions.
//! - [`amalgam`] — outline templates and the outline-to-square realization.
//! - [`construct`] — constructive routes (inflation, lifting, replacement,
//!   halving, dimension combining) behind one dispatcher per dimension.
//! - [`classify`] — existence verdicts with rule citations.
//! - [`oracle`] — exhaustive backtracking search at tiny orders.
//! - [`assets`] — embedded reference arrays with load-time verification.
//! - [`grid`] — the plain-text array file format used by the CLI.

pub mod amalgam;
pub mod assets;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod flow;
pub mod grid;
pub mod hypercube;
pub mod oracle;
pub mod outline;
pub mod partition;
pub mod verify;

pub use error::{Error, Result};
pub use hypercube::LatinHypercube;
pub use partition::{parse_composition, parse_partition, Composition, Partition};
