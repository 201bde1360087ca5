use std::sync::Arc;

use fredholm::kernels::{kernel_from_name, AiryKernel, GreenKernel, Kernel, TransformedKernel};
use fredholm::nystrom::{fredholm_det, NystromProblem};
use fredholm::quadrature::gauss_legendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Registry kernels with a sampling box for their arguments.
fn registry() -> Vec<(&'static str, f64, f64)> {
    vec![
        ("sine", -5.0, 5.0),
        ("airy", -8.0, 8.0),
        ("green", 0.0, 1.0),
        ("airy2:0", -6.0, 6.0),
        ("airy2:0.5", -6.0, 6.0),
        ("airy2:-0.5", -6.0, 6.0),
        ("airy2:2", -6.0, 6.0),
        ("airy1:0", -6.0, 6.0),
        ("airy1:0.7", -6.0, 6.0),
        ("airy1:-0.7", -6.0, 6.0),
    ]
}

#[test]
fn hermitian_kernels_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, lo, hi) in registry() {
        let k = kernel_from_name(name).unwrap();
        assert!(k.is_hermitian(), "{name}");
        for _ in 0..1000 {
            let (x, y) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
            let (kxy, kyx) = (k.eval(x, y), k.eval(y, x));
            assert!(kxy.is_finite(), "{name} ({x}, {y})");
            assert!((kxy - kyx).abs() <= 1e-13 * (1.0 + kxy.abs()), "{name} ({x}, {y}): {kxy} vs {kyx}");
        }
    }
}

#[test]
fn transformed_kernels_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in [-4.0, 0.0, 2.0] {
        let k = TransformedKernel::new(Arc::new(AiryKernel), s, 10.0).unwrap();
        assert!(k.is_hermitian());
        for _ in 0..1000 {
            let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let (kxy, kyx) = (k.eval(x, y), k.eval(y, x));
            assert!(kxy.is_finite());
            assert!((kxy - kyx).abs() <= 1e-13 * (1.0 + kxy.abs()), "s={s} ({x}, {y})");
        }
    }
}

#[test]
fn transformed_kernel_vanishes_at_the_far_endpoint() {
    let k = TransformedKernel::new(Arc::new(AiryKernel), -2.0, 10.0).unwrap();
    assert_eq!(k.eval(1.0, 0.3), 0.0);
    assert_eq!(k.eval(0.3, 1.0), 0.0);
    let mut prev = f64::INFINITY;
    for xi in [0.8, 0.85, 0.9, 0.95, 0.99, 0.999, 1.0 - 1e-6] {
        let v = k.eval(xi, xi).abs();
        assert!(v.is_finite() && (v < prev || v == 0.0), "xi={xi}: {v}");
        prev = v;
    }
    assert_eq!(prev, 0.0);
}

#[test]
fn green_kernel_is_positive_semidefinite() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let k = GreenKernel;
    for _ in 0..500 {
        let n = rng.gen_range(1..=30);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let zs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut q = 0.0;
        for j in 0..n {
            for l in 0..n {
                q += zs[j] * zs[l] * k.eval(xs[j], xs[l]);
            }
        }
        assert!(q >= -1e-12, "quadratic form {q}");
    }
}

#[test]
fn determinant_is_invariant_under_the_transform_scale() {
    let rule = gauss_legendre(0.0, 1.0, 80).unwrap();
    for s in [-3.0, -1.0, 0.0, 1.5] {
        let det = |scale: f64| {
            let k = Arc::new(TransformedKernel::new(Arc::new(AiryKernel), s, scale).unwrap());
            fredholm_det(&NystromProblem::new(k, rule.clone(), -1.0f64).unwrap()).unwrap().value
        };
        let (d5, d10) = (det(5.0), det(10.0));
        assert!((d5 - d10).abs() <= 1e-10, "s={s}: {d5} vs {d10}");
    }
}
