use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested work exceeds a configured cap.
    #[error("resource limit exceeded: {needed} evaluations requested, cap is {cap}")]
    Resource { needed: u128, cap: u128 },

    /// Cholesky/LDL factorization hit a non-positive pivot.
    #[error("matrix is not positive definite (pivot {index} = {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    /// A kernel returned a non-finite value at a node pair.
    #[error("kernel evaluation is not finite at node pair ({i}, {j}): K({x}, {y}) = {value}")]
    Evaluation { i: usize, j: usize, x: f64, y: f64, value: f64 },

    /// An integrand returned a non-finite value.
    #[error("integrand is not finite at x = {x}: f(x) = {value}")]
    NonFinite { x: f64, value: f64 },

    /// Inconsistent shapes or parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// A result would overflow the floating-point range.
    #[error("range error: {0}")]
    Range(String),

    /// A precondition on the numerical setup failed (e.g. a truncation box too narrow).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
