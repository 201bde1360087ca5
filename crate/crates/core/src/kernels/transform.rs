use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use super::{Kernel, Smoothness};
use crate::error::{Error, Result};

/// Default `scale` of the map `φ(ξ) = s + scale·tan(πξ/2)`.
pub const DEFAULT_SCALE: f64 = 10.0;

/// A kernel on `(s_row, ∞) × (s_col, ∞)` pulled back to `(0, 1)²`:
/// `K̃(ξ, η) = √(φ_r'(ξ) φ_c'(η)) K(φ_r(ξ), φ_c(η))` with
/// `φ(ξ) = s + scale·tan(πξ/2)`.
///
/// The determinant on `L²(s, ∞)` is unchanged by the substitution. At `ξ = 1`
/// or `η = 1` the kernel is defined as 0, the limit for the rapidly decaying
/// kernels it is used with.
#[derive(Clone)]
pub struct TransformedKernel {
    base: Arc<dyn Kernel>,
    s_row: f64,
    s_col: f64,
    scale: f64,
}

impl std::fmt::Debug for TransformedKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransformedKernel")
            .field("base", &self.base.name())
            .field("s_row", &self.s_row)
            .field("s_col", &self.s_col)
            .field("scale", &self.scale)
            .finish()
    }
}

impl TransformedKernel {
    /// Same offset `s` on both variables.
    pub fn new(base: Arc<dyn Kernel>, s: f64, scale: f64) -> Result<Self> {
        Self::two_sided(base, s, s, scale)
    }

    /// Rows live on `(s_row, ∞)` and columns on `(s_col, ∞)`, as needed for the
    /// off-diagonal blocks of a system.
    pub fn two_sided(base: Arc<dyn Kernel>, s_row: f64, s_col: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Domain(format!("transformation scale must be positive, got {scale}")));
        }
        if !s_row.is_finite() || !s_col.is_finite() {
            return Err(Error::Domain("transformation offset must be finite".into()));
        }
        Ok(Self { base, s_row, s_col, scale })
    }

    /// `φ(ξ) = s + scale·tan(πξ/2)`.
    pub fn phi(&self, s: f64, xi: f64) -> f64 {
        s + self.scale * (FRAC_PI_2 * xi).tan()
    }

    /// `φ'(ξ) = scale·(π/2)·sec²(πξ/2)`.
    pub fn phi_prime(&self, xi: f64) -> f64 {
        let c = (FRAC_PI_2 * xi).cos();
        self.scale * FRAC_PI_2 / (c * c)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn mapped(&self, s: f64, pts: &[f64]) -> (Vec<f64>, Vec<f64>) {
        pts.iter()
            .map(|&p| if p >= 1.0 { (f64::INFINITY, 0.0) } else { (self.phi(s, p), self.phi_prime(p).sqrt()) })
            .unzip()
    }
}

impl Kernel for TransformedKernel {
    fn eval(&self, xi: f64, eta: f64) -> f64 {
        if xi >= 1.0 || eta >= 1.0 {
            return 0.0;
        }
        let k = self.base.eval(self.phi(self.s_row, xi), self.phi(self.s_col, eta));
        if k == 0.0 {
            return 0.0;
        }
        self.phi_prime(xi).sqrt() * self.phi_prime(eta).sqrt() * k
    }

    fn name(&self) -> String {
        format!("{} on ({}, inf)x({}, inf), scale {}", self.base.name(), self.s_row, self.s_col, self.scale)
    }
    fn smoothness(&self) -> Smoothness {
        self.base.smoothness()
    }
    fn is_hermitian(&self) -> bool {
        self.base.is_hermitian() && self.s_row == self.s_col
    }

    fn fill(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        let (px, dx) = self.mapped(self.s_row, xs);
        let (py, dy) = self.mapped(self.s_col, ys);
        // points mapped to infinity are evaluated at a finite stand-in and zeroed below
        let finite = |v: &[f64]| v.iter().map(|&p| if p.is_finite() { p } else { f64::MAX.sqrt() }).collect::<Vec<_>>();
        let vals = self.base.fill(&finite(&px), &finite(&py));
        let n = ys.len();
        vals.into_iter()
            .enumerate()
            .map(|(idx, k)| {
                let (i, j) = (idx / n, idx % n);
                if k == 0.0 || dx[i] == 0.0 || dy[j] == 0.0 {
                    0.0
                } else {
                    dx[i] * dy[j] * k
                }
            })
            .collect()
    }
}
