//! Exact edge coloring of hypergraphs with two hypervertices.
//!
//! A job-machine bipartite multigraph is extended by two machine groups that
//! act as hypervertices. The crate computes the edge chromatic number exactly:
//! it solves the linear relaxation of the coloring integer program in exact
//! rational arithmetic, rounds it to an integral optimum through two
//! lower-bounded flow networks, and assembles an explicit coloring split into
//! the four structural parts. A brute-force oracle cross-checks the result on
//! small instances.

pub mod chromatic;
pub mod cli;
pub mod fixtures;
pub mod flow;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod rounding;
pub mod scalar;

pub use scalar::{ExactField, ExactNum, ExactScalar};

/// A solution over exact rationals.
pub type Solution = model::HypergraphSolution<ExactScalar>;
/// A linear program over exact rationals.
pub type Lp = lp::LpProblem<ExactScalar>;
/// The result of an exact rational simplex solve.
pub type LpResult = lp::LpSolution<ExactScalar>;
