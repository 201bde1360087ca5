use std::f64::consts::PI;

use rayon::prelude::*;

use super::{Kernel, Smoothness};
use crate::specfun::airy_pair;

/// Below this distance from the diagonal the quotients are replaced by
/// their Taylor expansions.
const NEAR_DIAGONAL: f64 = 1e-4;

/// `sin(π(x-y)) / (π(x-y))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SineKernel;

impl Kernel for SineKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let u = PI * (x - y);
        if (x - y).abs() < NEAR_DIAGONAL {
            let u2 = u * u;
            1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
        } else {
            u.sin() / u
        }
    }
    fn name(&self) -> String {
        "sine".into()
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Entire
    }
    fn is_hermitian(&self) -> bool {
        true
    }
    fn diagonal(&self, _x: f64) -> Option<f64> {
        Some(1.0)
    }
}

/// `(Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AiryKernel;

impl AiryKernel {
    fn from_values(x: f64, y: f64, (ax, apx): (f64, f64), (ay, apy): (f64, f64)) -> f64 {
        let d = x - y;
        if d.abs() < NEAR_DIAGONAL {
            // K(m+h, m-h) = D(m) + h² ∫_m^∞ (u Ai² - Ai'²) du + O(h⁴)
            let m = 0.5 * (x + y);
            let h = 0.5 * d;
            let (a, ap) = airy_pair(m);
            let diag = ap * ap - m * a * a;
            let curv = -2.0 / 3.0 * (m * m * a * a - m * ap * ap) + a * ap / 3.0;
            diag + h * h * curv
        } else {
            (ax * apy - ay * apx) / d
        }
    }
}

impl Kernel for AiryKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        Self::from_values(x, y, airy_pair(x), airy_pair(y))
    }
    fn name(&self) -> String {
        "airy".into()
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Entire
    }
    fn is_hermitian(&self) -> bool {
        true
    }
    fn diagonal(&self, x: f64) -> Option<f64> {
        let (a, ap) = airy_pair(x);
        Some(ap * ap - x * a * a)
    }
    fn fill(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        let ax: Vec<_> = xs.iter().map(|&x| airy_pair(x)).collect();
        let ay: Vec<_> = ys.iter().map(|&y| airy_pair(y)).collect();
        xs.par_iter()
            .zip(&ax)
            .flat_map_iter(|(&x, &vx)| ys.iter().zip(&ay).map(move |(&y, &vy)| Self::from_values(x, y, vx, vy)))
            .collect()
    }
}

/// Green's function of `-u'' = f` on `[0, 1]` with Dirichlet conditions:
/// `x(1-y)` for `x <= y`, `y(1-x)` otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreenKernel;

impl Kernel for GreenKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            x * (1.0 - y)
        } else {
            y * (1.0 - x)
        }
    }
    fn name(&self) -> String {
        "green".into()
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Lipschitz(1)
    }
    fn is_hermitian(&self) -> bool {
        true
    }
}
