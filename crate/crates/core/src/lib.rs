//! String selection problems with outliers.
//!
//! This crate provides exact brute-force solvers, local-search heuristics,
//! executable hardness reductions (Max-2-SAT to Close to Most Strings,
//! Densest-k-Subgraph to Most Strings with Few Bad Columns), a decision
//! wrapper for Closest to k Strings built on an approximation oracle, and
//! experiment harnesses that check the probabilistic and arithmetic facts the
//! reductions rely on.
//!
//! Column and string indices are 0-based throughout the library. The text
//! formats in [`io`] and the command-line tool render them 1-based.

pub mod error;
pub mod exact;
pub mod experiments;
pub mod fpt;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod reductions;
pub mod rng;
pub mod sat;
pub mod strings;

pub use error::{Error, Result};
pub use graph::Graph;
pub use sat::{Assignment, Clause, Literal, Max2SatInstance};
pub use strings::{
    anticoverage, bad_columns, complement, coverage, hamming, Alphabet, CksInstance, CmsInstance,
    ColumnSet, FfmsInstance, MsfbcInstance, StringSet, Word,
};
