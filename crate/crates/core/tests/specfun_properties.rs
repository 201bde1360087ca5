use fredholm::specfun::{airy, airy_ai, airy_ai_prime, airy_bi_validation, erf, erfc, AI_ZERO};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn airy_equation_residual(x in -10.0f64..10.0) {
        let h = 1e-4;
        let v = airy(x).unwrap();
        let second = (airy_ai_prime(x + h).unwrap() - airy_ai_prime(x - h).unwrap()) / (2.0 * h);
        let residual = (second - x * v.ai).abs();
        // leading truncation term of the centred difference, h²/6 · Ai''''
        let truncation = h * h / 6.0 * (2.0 * v.ai_prime + x * x * v.ai).abs();
        let tol = 1e-8 * (1.0 + (x * v.ai).abs()) + truncation;
        prop_assert!(residual <= tol, "x={x}: residual {residual}");
    }

    #[test]
    fn wronskian(x in -9.0f64..6.0) {
        let v = airy(x).unwrap();
        let (bi, bi_prime) = airy_bi_validation(x).unwrap();
        let w = v.ai * bi_prime - v.ai_prime * bi;
        prop_assert!((w - 1.0 / PI).abs() <= 1e-12 * (1.0 + (v.ai * bi_prime).abs()), "x={x}: {w}");
    }

    #[test]
    fn positive_axis_bounds(x in 0.0f64..100.0) {
        let v = airy(x).unwrap();
        prop_assert!(v.ai > 0.0 && v.ai <= AI_ZERO);
        prop_assert!(v.ai_prime < 0.0);
    }

    #[test]
    fn erf_is_odd(x in -10.0f64..10.0) {
        prop_assert_eq!(erf(-x).unwrap(), -erf(x).unwrap());
        prop_assert!((erf(x).unwrap() + erfc(x).unwrap() - 1.0).abs() <= 2.0 * f64::EPSILON);
    }
}

#[test]
fn airy_decreases_on_the_positive_axis() {
    let mut prev = airy_ai(0.0).unwrap();
    let mut x = 0.0;
    while x < 200.0 {
        x += 0.01;
        let ai = airy_ai(x).unwrap();
        if prev < f64::MIN_POSITIVE {
            // subnormal range: only monotone up to the spacing of subnormals
            assert!(ai <= prev, "x={x}: {ai} > {prev}");
        } else {
            assert!(ai < prev, "x={x}: {ai} >= {prev}");
        }
        prev = ai;
    }
    assert_eq!(airy_ai(200.0).unwrap(), 0.0);
}

#[test]
fn non_finite_arguments_are_rejected() {
    for x in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
        assert!(airy(x).is_err());
    }
    assert!(erf(f64::NAN).is_err());
}
