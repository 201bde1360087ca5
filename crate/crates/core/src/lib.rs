//! Numerical evaluation of Fredholm determinants by the Nyström method, with
//! the random-matrix distributions built on top of it.

pub mod analysis;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod nystrom;
pub mod projection;
pub mod quadrature;
pub mod rmt;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use quadrature::{QuadRule, RuleFamily};
pub use scalar::Scalar;

pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Double precision quadrature rule.
pub type Rule = QuadRule<f64>;
/// Real double precision matrix.
pub type Matrix = DenseMatrix<f64>;
/// Complex double precision matrix.
pub type ComplexMatrix = DenseMatrix<Complex64>;
/// Matrix over exact rationals.
pub type RationalMatrix = DenseMatrix<BigRational>;
