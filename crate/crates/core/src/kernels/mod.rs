//! Kernel functions `K(x, y)` of the integral operators.

mod basic;
mod process;
mod transform;

use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use basic::{AiryKernel, GreenKernel, SineKernel};
pub use process::{Airy1ProcessKernel, Airy2ProcessKernel, InnerFactor, DEFAULT_PANEL_POINTS, DEFAULT_T_SWITCH};
pub use transform::{TransformedKernel, DEFAULT_SCALE};

/// Regularity class of a kernel, which governs the convergence rate of
/// quadrature-based determinants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Continuous,
    /// `C^{k-1,1}`: `k - 1` derivatives, the last one Lipschitz.
    Lipschitz(u32),
    /// Analytic in a neighbourhood of the real domain.
    Entire,
}

/// A real kernel function on a rectangle.
pub trait Kernel: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> f64;

    fn name(&self) -> String;

    fn smoothness(&self) -> Smoothness;

    /// `K(x, y) = K(y, x)` on the whole domain.
    fn is_hermitian(&self) -> bool;

    /// Closed form of `K(x, x)` when the quotient defining the kernel has a
    /// removable singularity there.
    fn diagonal(&self, _x: f64) -> Option<f64> {
        None
    }

    /// `K(xs[i], ys[j])` in row-major order. Implementations may override this
    /// to share work between entries; the default evaluates rows in parallel.
    fn fill(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        xs.par_iter().flat_map_iter(|&x| ys.iter().map(move |&y| self.eval(x, y))).collect()
    }
}

/// Kernel names understood by [`kernel_from_name`].
pub const KERNEL_NAMES: &[&str] = &["sine", "airy", "green", "airy2:<t>", "airy1:<t>"];

/// Look a kernel up by name: `sine`, `airy`, `green`, `airy2:t` or `airy1:t`.
pub fn kernel_from_name(name: &str) -> Result<Arc<dyn Kernel>> {
    let unknown = || Error::Config(format!("unknown kernel '{name}'; available: {}", KERNEL_NAMES.join(", ")));
    let (head, param) = match name.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (name, None),
    };
    let time = |p: Option<&str>| -> Result<f64> {
        let p = p.ok_or_else(unknown)?;
        let t = f64::from_str(p.trim()).map_err(|_| Error::Config(format!("bad time parameter in kernel '{name}'")))?;
        if !t.is_finite() {
            return Err(Error::Config(format!("bad time parameter in kernel '{name}'")));
        }
        Ok(t)
    };
    match (head, param) {
        ("sine", None) => Ok(Arc::new(SineKernel)),
        ("airy", None) => Ok(Arc::new(AiryKernel)),
        ("green", None) => Ok(Arc::new(GreenKernel)),
        ("airy2", p) => Ok(Arc::new(Airy2ProcessKernel::new(time(p)?))),
        ("airy1", p) => Ok(Arc::new(Airy1ProcessKernel::new(time(p)?))),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        for name in ["sine", "airy", "green", "airy2:1", "airy1:-0.5"] {
            assert!(kernel_from_name(name).is_ok(), "{name}");
        }
        assert_eq!(kernel_from_name("airy2:1.5").unwrap().name(), "airy2:1.5");
        let err = kernel_from_name("bessel").err().unwrap();
        assert!(err.to_string().contains("airy2:<t>"));
        assert!(kernel_from_name("airy2").is_err());
        assert!(kernel_from_name("airy2:x").is_err());
        assert!(kernel_from_name("sine:1").is_err());
    }

    #[test]
    fn default_fill_matches_eval() {
        let k = GreenKernel;
        let xs = [0.1, 0.5, 0.9];
        let ys = [0.2, 0.7];
        let f = k.fill(&xs, &ys);
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                assert_eq!(f[i * 2 + j], k.eval(x, y));
            }
        }
    }
}
