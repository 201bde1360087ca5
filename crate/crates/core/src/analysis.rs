//! Computable pieces of the error theory: Hadamard bounds for kernel minors
//! and the entire functions `Φ`, `Ψ` that enter the quadrature error bounds.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::linalg::{det_lu, DenseMatrix};
use crate::specfun::erf;

/// A bound together with the quantity it is supposed to dominate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub bound: f64,
    pub witness: f64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.witness <= self.bound * (1.0 + 1e-12)
    }
}

/// `n^{n/2} ‖K‖_∞^n`, Hadamard's bound on `|det(K(t_p, t_q))|` for `n` points.
pub fn hadamard_bound(n: usize, k_inf: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Hadamard bound needs n >= 1".into()));
    }
    if !(k_inf >= 0.0) {
        return Err(Error::Domain(format!("sup norm must be nonnegative, got {k_inf}")));
    }
    let n = n as f64;
    Ok((0.5 * n * n.ln() + n * k_inf.ln()).exp())
}

/// `det(K(t_p, t_q))_{p,q}` for the given points.
pub fn kernel_minor(kernel: &dyn Kernel, points: &[f64]) -> f64 {
    let n = points.len();
    if n == 0 {
        return 1.0;
    }
    let m = DenseMatrix::from_fn(n, n, |p, q| kernel.eval(points[p], points[q]));
    det_lu(&m).expect("square minor")
}

/// Largest `|det(K(t_p, t_q))|` over the given point tuples, reported against
/// [`hadamard_bound`].
pub fn hadamard_report<'a>(
    kernel: &dyn Kernel,
    k_inf: f64,
    n: usize,
    tuples: impl IntoIterator<Item = &'a [f64]>,
) -> Result<BoundReport> {
    let bound = hadamard_bound(n, k_inf)?;
    let mut witness: f64 = 0.0;
    for t in tuples {
        if t.len() != n {
            return Err(Error::Config(format!("expected {n} points per tuple, got {}", t.len())));
        }
        witness = witness.max(kernel_minor(kernel, t).abs());
    }
    Ok(BoundReport { n, bound, witness })
}

const MAX_ARGUMENT: f64 = 600.0;

/// `ln(e^a + e^b)`.
fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Φ(x)` for `Φ(x) = Σ_{n>=1} n^{(n+2)/2} x^n / n!`, summed until a term
/// falls below `tol` times the partial sum past the peak of the terms.
pub fn ln_phi_series(x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0) {
        return if x == 0.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Err(Error::Domain(format!("Φ is summed for x >= 0, got {x}")))
        };
    }
    if x > MAX_ARGUMENT {
        return Err(Error::Range(format!("Φ({x}) exceeds the supported range x <= {MAX_ARGUMENT}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let lx = x.ln();
    let peak = std::f64::consts::E * x * x;
    let mut ln_fact = 0.0;
    let mut total = f64::NEG_INFINITY;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        ln_fact += nf.ln();
        let term = 0.5 * (nf + 2.0) * nf.ln() + nf * lx - ln_fact;
        total = log_add(total, term);
        if nf > peak && term - total < tol.ln() {
            return Ok(total);
        }
        n += 1;
    }
}

/// `Φ(x)`; a range error is returned when the value overflows.
pub fn phi_series(x: f64, tol: f64) -> Result<f64> {
    let l = ln_phi_series(x, tol)?;
    let v = l.exp();
    if !v.is_finite() {
        return Err(Error::Range(format!("Φ({x}) = e^{l} overflows")));
    }
    Ok(v)
}

/// `ln Ψ(x)` for `Ψ(x) = 1 + (√π/2) x e^{x²/4} (1 + erf(x/2))`, `x >= 0`.
pub fn ln_psi_closed(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Ψ is evaluated for finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln_second = (0.5 * PI.sqrt() * x * (1.0 + erf(0.5 * x)?)).ln() + 0.25 * x * x;
    Ok(log_add(0.0, ln_second))
}

/// `Ψ(x)`; a range error is returned when the value overflows.
pub fn psi_closed(x: f64) -> Result<f64> {
    let l = ln_psi_closed(x)?;
    let v = l.exp();
    if !v.is_finite() {
        return Err(Error::Range(format!("Ψ({x}) = e^{l} overflows")));
    }
    Ok(v)
}

/// `ln Φ(x) - ln(x Ψ(x√(2e)))`; lies in `[ln √(e/π), 0]`.
pub fn phi_psi_log_ratio(x: f64, tol: f64) -> Result<f64> {
    let c = (2.0 * std::f64::consts::E).sqrt();
    Ok(ln_phi_series(x, tol)? - x.ln() - ln_psi_closed(x * c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_examples() {
        assert!((hadamard_bound(1, 0.7).unwrap() - 0.7).abs() < 1e-15);
        assert!((hadamard_bound(2, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((hadamard_bound(3, 1.0).unwrap() - 27f64.sqrt()).abs() < 1e-13);
        assert_eq!(hadamard_bound(4, 0.0).unwrap(), 0.0);
        assert!(hadamard_bound(0, 1.0).is_err());
    }

    #[test]
    fn phi_psi_at_zero() {
        assert_eq!(phi_series(0.0, 1e-16).unwrap(), 0.0);
        assert_eq!(psi_closed(0.0).unwrap(), 1.0);
    }

    #[test]
    fn phi_small_argument_series() {
        // Φ(x) = x + 2^2 x^2/2 + 3^{5/2} x^3/6 + ...; the sixth term is ~1e-15 relative
        let x: f64 = 1e-3;
        let direct = x
            + 2.0 * x * x
            + 27f64.sqrt() * 3.0 * x.powi(3) / 6.0
            + 64.0 * x.powi(4) / 24.0
            + 5f64.powf(3.5) * x.powi(5) / 120.0;
        assert!((phi_series(x, 1e-17).unwrap() - direct).abs() < 1e-14 * direct);
    }

    #[test]
    fn enclosure_examples() {
        let lower = (std::f64::consts::E / PI).sqrt().ln();
        for x in [0.5, 1.0, 2.0, 10.0, 50.0] {
            let r = phi_psi_log_ratio(x, 1e-16).unwrap();
            assert!(r >= lower - 1e-12 && r <= 1e-12, "x={x}: {r}");
        }
    }

    #[test]
    fn overflow_is_range_error() {
        assert!(matches!(phi_series(601.0, 1e-16), Err(Error::Range(_))));
        assert!(matches!(phi_series(100.0, 1e-16), Err(Error::Range(_))));
        assert!(ln_phi_series(100.0, 1e-16).is_ok());
        assert!(matches!(psi_closed(100.0), Err(Error::Range(_))));
    }
}
