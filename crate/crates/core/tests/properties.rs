use std::f64::consts::PI;

use proptest::prelude::*;

use spherepd::decomposition::lemma23_coeffs;
use spherepd::kernels::{fractional_lift_check, Dimension, KernelSpec};
use spherepd::quadrature::{integrate_endpoint_singular_with, QuadOptions, SingularWeight};
use spherepd::specfun::gamma::gamma;
use spherepd::specfun::{gegenbauer_eval, legendre_eval, legendre_values};

fn beta(a: f64, b: f64) -> f64 {
    gamma(a) * gamma(b) / gamma(a + b)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gegenbauer_three_term_recurrence(n in 2usize..40, lambda in 0.1f64..3.0, x in -1.0f64..1.0) {
        let c = |k| gegenbauer_eval(k, lambda, x, false).unwrap();
        let nf = n as f64;
        let rhs = (2.0 * (nf + lambda - 1.0) * x * c(n - 1) - (nf + 2.0 * lambda - 2.0) * c(n - 2)) / nf;
        let scale = c(n - 1).abs().max(c(n - 2).abs()).max(1.0);
        prop_assert!((c(n) - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn normalized_gegenbauer_is_bounded(n in 0usize..200, lambda in 0.5f64..4.0, x in -1.0f64..1.0) {
        let v = gegenbauer_eval(n, lambda, x, true).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn large_degree_legendre_matches_recurrence(n in 200usize..600, t in 0.3f64..2.8) {
        let fast = legendre_values(n, t).unwrap().p;
        let slow = legendre_eval(n, t.cos()).unwrap();
        prop_assert!((fast - slow).abs() <= 1e-12, "n = {}, t = {}: {} vs {}", n, t, fast, slow);
    }

    #[test]
    fn jacobi_weight_moments(k in 0u32..6, left in -0.9f64..3.0, right in -0.9f64..3.0) {
        let w = SingularWeight::new(left, right).unwrap();
        let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-12, ..QuadOptions::default() };
        let r = integrate_endpoint_singular_with(|t| t.powi(k as i32), 0.0, 1.0, w, None, &opts);
        let want = beta(k as f64 + left + 1.0, right + 1.0);
        prop_assert!(r.converged);
        prop_assert!((r.value - want).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn half_angle_coefficients_positive(n in 0usize..400, lambda in 1u32..5) {
        let c = lemma23_coeffs(n, lambda).unwrap();
        prop_assert!(c.coeffs.iter().all(|&a| a > 0.0));
        let s: f64 = c.coeffs.iter().sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fractional_lift_identity(
        d in prop::sample::select(vec![2u32, 3, 5]),
        support in 0.5f64..PI,
        exponent in 1.0f64..4.0,
        delta1 in 1.0f64..4.0,
        frac in 0.0f64..1.0,
        theta in 0.3f64..PI,
        n in 0usize..12,
    ) {
        let g = KernelSpec::truncated_power(support, exponent).unwrap();
        let delta2 = frac * (delta1 - 0.2);
        let c = fractional_lift_check(&g, delta1, delta2, theta, n, Dimension::new(d).unwrap(), &QuadOptions::with_tol(1e-12)).unwrap();
        prop_assert!(c.residual <= 1e-8, "{:?}", c);
    }
}
