use std::f64::consts::PI;

use spherepd::decomposition::*;
use spherepd::kernels::KernelSpec;

fn grid(points: usize, hi: f64) -> Vec<f64> {
    (0..points).map(|k| hi * k as f64 / (points - 1) as f64).collect()
}

#[test]
fn half_angle_coefficients_are_positive_and_exact() {
    let g = grid(101, PI);
    let mut worst = 0.0f64;
    for lambda in 1..=3 {
        for n in 0..=50 {
            let c = lemma23_coeffs(n, lambda).unwrap();
            assert_eq!(c.coeffs.len(), lambda as usize + 1);
            assert!(c.coeffs.iter().all(|&a| a > 0.0), "n = {n}, lambda = {lambda}");
            let s: f64 = c.coeffs.iter().sum();
            assert!((s - 1.0).abs() < 1e-14);
            worst = worst.max(verify_lemma23(n, lambda, &g).unwrap());
        }
    }
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn refinement_identity() {
    let one = KernelSpec::indicator(1.0).unwrap();
    let r = refinement_check(&one, 0, 1.0, 1).unwrap();
    assert!(r.relative <= 1e-8, "{r:?}");
    let tp = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let r = refinement_check(&tp, 2, 0.5, 1).unwrap();
    assert!(r.relative <= 1e-8, "{r:?}");
    let r = refinement_check(&tp, 7, 2.5, 3).unwrap();
    assert!(r.relative <= 1e-8, "{r:?}");
    let r = refinement_check(&KernelSpec::zero(), 2, 0.5, 1).unwrap();
    assert_eq!(r.residual, 0.0);
}

#[test]
fn iterated_refinement_composes() {
    let tp = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let once = refinement_check(&tp, 3, 2.0, 2).unwrap();
    let twice = refinement_check_iterated(&tp, 3, 2.0, 2, 2).unwrap();
    assert!(
        (once.rhs - twice.rhs).abs() <= 1e-7 * once.lhs.abs(),
        "{once:?} {twice:?}"
    );
    assert!(twice.relative <= 1e-7);
}

#[test]
fn coefficient_sum_telescopes() {
    for lambda in 2..=6u32 {
        for ell in 1..lambda {
            let a = f_ell_coeffs(lambda, ell).unwrap();
            let b = f_ell_coeffs(lambda, ell + 1).unwrap();
            let lhs = b.get(1, 0) + b.get(0, 0);
            let rhs = 2 * (lambda - ell) as i128 * (a.get(1, 0) + a.get(0, 0));
            assert_eq!(lhs, rhs, "lambda = {lambda}, ell = {ell}");
            // odd double factorial in the leading coefficient
            let odd: i128 = (0..=ell as i128).map(|i| 2 * lambda as i128 - 2 * i - 1).product();
            assert_eq!(b.get(0, 0), odd);
        }
        let top = f_ell_coeffs(lambda, lambda).unwrap();
        let fact: i128 = (1..=lambda as i128).product();
        assert_eq!(top.get(0, 0) + top.get(1, 0), (1i128 << lambda) * fact);
    }
}

#[test]
fn f_ell_closed_form_matches_differences() {
    let f = Polynomial::bump(3, 3);
    let theta = 0.4;
    let g: Vec<f64> = (1..=401).map(|k| theta * k as f64 / 401.0).collect();
    let r = verify_f_ell(&f, 3, 3, theta, &g).unwrap();
    assert!(r <= 1e-6, "{r}");
    let r = verify_f_ell(&Polynomial::new(vec![1.0, -2.0, 0.5]), 1, 1, 0.7, &g[..200]).unwrap();
    assert!(r <= 1e-6, "{r}");
}
