//! Spectral ranking over sparse weighted directed graphs.
//!
//! One family of methods, one substrate: every ranking here is the dominant
//! eigenvector (or a resolvent) of some normalization of a sparse adjacency
//! matrix. The crate provides PageRank with damping and personalization,
//! HITS authority/hub scores, Pinski-Narin journal influence, Leontief
//! closed/open input-output pricing, Seeley popularity, Katz attenuated-path
//! status, Hubbell prestige with signed endorsements, Wei-Kendall sport
//! ranking, and a Monte-Carlo random-surfer simulation that serves as an
//! independent statistical check on PageRank.

pub mod cli;
pub mod graph;
pub mod hits;
pub mod influence;
pub mod output;
pub mod pagerank;
pub mod sim;
pub mod sociometry;
pub mod solver;

use thiserror::Error;

/// Crate-wide error type. `Parse` and `InvalidInput` are problems with the
/// caller's data or configuration; `Numerical` covers method-level
/// rejections (divergent series, undefined normalizations, singular
/// systems) discovered while solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use graph::{build_graph, GraphBuilder, Normalization, ScoreVector, SparseGraph};
pub use solver::{SolveReport, SolverConfig};
