use fredholm::quadrature::{clenshaw_curtis, gauss_legendre, quad_apply};
use fredholm::RuleFamily;
use proptest::prelude::*;

const EPS: f64 = f64::EPSILON;

fn monomial_integral(a: f64, b: f64, k: i32) -> f64 {
    (b.powi(k + 1) - a.powi(k + 1)) / (k + 1) as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rules_are_exact_below_their_order(
        m in 2usize..40,
        a in -1.0f64..0.5,
        len in 0.1f64..1.0,
        gauss in any::<bool>(),
    ) {
        let b = a + len;
        let family = if gauss { RuleFamily::GaussLegendre } else { RuleFamily::ClenshawCurtis };
        let rule = family.build(a, b, m).unwrap();
        let scale = a.abs().max(b.abs());
        for k in 0..rule.order() as i32 {
            let q = quad_apply(&rule, |x| x.powi(k)).unwrap();
            let exact = monomial_integral(a, b, k);
            let tol = 100.0 * EPS * (b - a) * scale.powi(k).max(len.powi(k));
            prop_assert!((q - exact).abs() <= tol, "{family:?} m={m} k={k}: {q} vs {exact}");
        }
    }

    #[test]
    fn affine_map_of_reference_rule(m in 2usize..60, a in -5.0f64..5.0, len in 0.01f64..10.0) {
        let b = a + len;
        for family in [RuleFamily::GaussLegendre, RuleFamily::ClenshawCurtis] {
            let direct = family.build(a, b, m).unwrap();
            let mapped = family.build(-1.0, 1.0, m).unwrap().map_to(a, b).unwrap();
            for ((x, w), (y, v)) in direct.iter().zip(mapped.iter()) {
                prop_assert!((x - y).abs() <= 4.0 * EPS * a.abs().max(b.abs()));
                prop_assert!((w - v).abs() <= 4.0 * EPS * w.abs());
            }
        }
    }
}

#[test]
fn weights_are_positive_up_to_500_points() {
    for m in 1..=500 {
        let g = gauss_legendre(0.0, 1.0, m).unwrap();
        assert!(g.weights().iter().all(|&w| w > 0.0), "Gauss m={m}");
    }
    // the closed Clenshaw-Curtis rule starts at two points
    assert!(clenshaw_curtis(0.0, 1.0, 1).is_err());
    for m in 2..=500 {
        let c = clenshaw_curtis(0.0, 1.0, m).unwrap();
        assert!(c.weights().iter().all(|&w| w > 0.0), "Clenshaw-Curtis m={m}");
    }
}

#[test]
fn positive_rules_converge_for_continuous_functions() {
    // continuous but not smooth: convergence follows from positivity alone
    let tests: [(fn(f64) -> f64, f64); 4] = [
        (|x| (x - 0.3).abs(), 0.29),
        (|x| x.sqrt(), 2.0 / 3.0),
        (|x| if x == 0.0 { 0.0 } else { x * (1.0 / x).sin() }, 0.378_530_015_315_636_7),
        (|x| (x - 1.0 / 3.0).abs().powf(0.1), (((2.0f64 / 3.0).powf(1.1) + (1.0f64 / 3.0).powf(1.1)) / 1.1)),
    ];
    for family in [RuleFamily::GaussLegendre, RuleFamily::ClenshawCurtis] {
        for (i, (f, exact)) in tests.iter().enumerate() {
            let err = |m| (quad_apply(&family.build(0.0, 1.0, m).unwrap(), f).unwrap() - exact).abs();
            let (coarse, fine) = (err(8), err(400));
            assert!(fine < 2e-3, "{family:?} test {i}: error {fine}");
            assert!(fine < coarse, "{family:?} test {i}: {coarse} -> {fine}");
        }
    }
}
