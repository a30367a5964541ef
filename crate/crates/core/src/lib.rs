//! Exact and asymptotic analysis of the longest directed path in a uniformly
//! random acyclic orientation of the complete bipartite graph `K_{n,k}`.
//!
//! Acyclic orientations of `K_{n,k}` are in bijection with n x k lonesum
//! matrices, whose count is the poly-Bernoulli number `B_{n,k}`. The crate
//! computes the exact distribution of the longest path length, expands the
//! closed-form generating functions as a cross-check, samples orientations
//! exactly uniformly with big-integer arithmetic, and evaluates the Gaussian
//! limit diagnostics for the diagonal case n = k.

pub mod asymptotics;
pub mod distribution;
pub mod exact;
pub mod orientation;
pub mod sampler;
pub mod series;

pub use distribution::{PathLengthDistribution, ProbabilityGeneratingPolynomial};
pub use exact::{factorial, poly_bernoulli, stirling2, ExactInt, ExactRational, StirlingTable};
pub use orientation::{brute_force_distribution, ClassSignature, OrientationMatrix};
pub use sampler::{empirical_distribution, sample_orientation, RandomState};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("part sizes must be at least 1")]
    EmptyPart,
    #[error("matrix data has wrong length: expected {expected} bits, got {got}")]
    BadDimensions { expected: usize, got: usize },
    #[error("matrix is not lonesum")]
    NotLonesum,
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error("enumeration budget exceeded: nk = {nk} > {budget}")]
    BudgetExceeded { nk: usize, budget: usize },
    #[error("malformed matrix text (expected \"n k\" header and n rows of 0/1)")]
    BadMatrixText,
    #[error("geometric expansion requires a zero constant term")]
    NonzeroConstantTerm,
    #[error("cannot partition {items} items into {blocks} nonempty blocks")]
    InfeasiblePartition { items: usize, blocks: usize },
    #[error("u = {u} is outside the quasi-power domain")]
    DomainViolation { u: f64 },
    #[error("certification grid too coarse: {grid_size} < 128 points per axis")]
    GridTooCoarse { grid_size: usize },
    #[error("need at least one sample")]
    NoSamples,
}
