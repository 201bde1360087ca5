//! Projection methods for the Green's kernel of `-u'' = f` on `[0, 1]`,
//! whose Fredholm determinant is known in closed form:
//! `det(I + zA) = sinh(√z)/√z`, so `sin(1)` at `z = -1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{det_lu, DenseMatrix};

/// The leading eigenvalues `λ_n = 1/(π²n²)` of the Green's operator.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenSpectrum {
    pub m: usize,
    pub eigenvalues: Vec<f64>,
}

impl GreenSpectrum {
    pub fn new(m: usize) -> Self {
        let eigenvalues = (1..=m).map(|n| 1.0 / (PI * PI * (n * n) as f64)).collect();
        Self { m, eigenvalues }
    }
}

/// Ritz–Galerkin approximation on the span of the first `m` eigenfunctions:
/// `∏_{n=1}^m (1 + z/(π²n²))`.
pub fn ritz_galerkin_green(m: usize, z: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("projection dimension must be at least 1".into()));
    }
    Ok((1..=m).map(|n| 1.0 + z / (PI * PI * (n * n) as f64)).product())
}

/// `⟨φ_i, A φ_j⟩` for the orthonormal shifted Legendre polynomials
/// `φ_n(x) = √(2n+1) P_n(2x-1)`; zero unless `|i - j| ∈ {0, 2}`.
pub fn legendre_green_matrix(m: usize) -> DenseMatrix<f64> {
    let a = |n: usize| {
        let n = n as f64;
        1.0 / (2.0 * (2.0 * n + 1.0) * (2.0 * n + 5.0))
    };
    let b = |n: usize| {
        let n = n as f64;
        -1.0 / (4.0 * (2.0 * n + 3.0) * ((2.0 * n + 1.0) * (2.0 * n + 5.0)).sqrt())
    };
    let mut mat = DenseMatrix::zeros(m, m);
    for j in 0..m {
        mat[(j, j)] = match j {
            0 => 1.0 / 12.0,
            1 => 1.0 / 60.0,
            _ => a(j - 1),
        };
        if j + 2 < m {
            mat[(j, j + 2)] = b(j);
            mat[(j + 2, j)] = b(j);
        }
    }
    mat
}

/// Galerkin approximation `det(δ_ij + z⟨φ_i, Aφ_j⟩)` in the Legendre basis.
pub fn galerkin_legendre_green(m: usize, z: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("projection dimension must be at least 1".into()));
    }
    det_lu(&legendre_green_matrix(m).identity_plus_scaled(&z)?)
}
