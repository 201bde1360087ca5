use fredholm::linalg::{det_cholesky, det_lu, frobenius_norm, operator_norm, trace_norm};
use fredholm::{Complex64, ComplexMatrix, Matrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
}

fn gram(b: &Matrix) -> Matrix {
    b.matmul(&b.adjoint()).unwrap()
}

/// `‖(I - A)^{-1}‖` for a symmetric positive semidefinite `A` with `λ₁ < 1`.
fn resolvent_norm(a: &Matrix) -> f64 {
    1.0 / (1.0 - operator_norm(a))
}

fn i_minus(a: &Matrix) -> Matrix {
    a.identity_plus_scaled(&-1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative(n in 1usize..=20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, n);
        let b = random_matrix(&mut rng, n);
        let lhs = det_lu(&a.matmul(&b).unwrap()).unwrap();
        let rhs = det_lu(&a).unwrap() * det_lu(&b).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(f64::MIN_POSITIVE), "{lhs} vs {rhs}");
    }

    #[test]
    fn cholesky_agrees_with_lu_on_positive_definite(n in 1usize..=20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = gram(&random_matrix(&mut rng, n)).identity_plus_scaled(&1.0).unwrap();
        let c = det_cholesky(&h).unwrap();
        let l = det_lu(&h).unwrap();
        prop_assert!((c - l).abs() <= 1e-12 * l.abs(), "{c} vs {l}");
    }

    #[test]
    fn complex_cholesky_agrees_with_lu(n in 1usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let h = b.matmul(&b.adjoint()).unwrap().identity_plus_scaled(&Complex64::new(1.0, 0.0)).unwrap();
        let c = det_cholesky(&h).unwrap();
        let l = det_lu(&h).unwrap();
        prop_assert!((c - l).norm() <= 1e-12 * l.norm());
        prop_assert!(c.im.abs() <= 1e-12 * c.re);
    }

    #[test]
    fn norms_are_ordered(rows in 1usize..=15, cols in 1usize..=15, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0));
        let (t, f, o) = (trace_norm(&a), frobenius_norm(&a), operator_norm(&a));
        prop_assert!(t >= f * (1.0 - 1e-12) && f >= o * (1.0 - 1e-12), "{t} {f} {o}");
    }
}

#[test]
fn determinant_perturbation_in_trace_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_4a11);
    for instance in 0..500 {
        let n = rng.gen_range(1..=20);
        let g = gram(&random_matrix(&mut rng, n));
        let lambda = rng.gen_range(0.0..0.95);
        let a = g.scale(&(lambda / operator_norm(&g).max(f64::MIN_POSITIVE)));
        let r = resolvent_norm(&a);
        let e = random_matrix(&mut rng, n);
        let size = rng.gen_range(0.01..0.9) / r;
        let e = e.scale(&(size / trace_norm(&e)));
        let e1 = trace_norm(&e);

        let base = det_lu(&i_minus(&a)).unwrap();
        let perturbed = det_lu(&i_minus(&a.add(&e).unwrap())).unwrap();
        let diff = (perturbed - base).abs();
        let bound = e1 / (1.0 - r * e1);
        assert!(diff <= bound * (1.0 + 1e-8), "instance {instance}: n={n} |Δ|={diff} bound={bound}");
        // the first-order bound holds once the perturbation is small
        let tiny = e.scale(&(1e-7 / (r * e1)));
        let t1 = trace_norm(&tiny);
        let diff = (det_lu(&i_minus(&a.add(&tiny).unwrap())).unwrap() - base).abs();
        assert!(diff <= t1 * (1.0 + 1e-5) + 1e-14, "instance {instance}: |Δ|={diff} vs {t1}");
    }
}

#[test]
fn first_order_bound_fails_for_large_perturbations() {
    // A = 0, E = -I/4: det(I - E) - 1 = 9/16 exceeds ‖E‖ = 1/2
    let a = Matrix::zeros(2, 2);
    let e = Matrix::identity(2).scale(&-0.25);
    let diff = det_lu(&i_minus(&a.add(&e).unwrap())).unwrap() - 1.0;
    assert!((diff - 0.5625).abs() < 1e-15);
    assert!(diff > trace_norm(&e));
    assert!(diff <= trace_norm(&e) / (1.0 - trace_norm(&e)));
}
