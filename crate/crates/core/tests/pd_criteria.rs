use std::f64::consts::PI;

use spherepd::kernels::{sinc_power_transform, Dimension, Interpolation, KernelSpec};
use spherepd::pd_tester::*;

fn dim(d: u32) -> Dimension {
    Dimension::new(d).unwrap()
}

#[test]
fn truncated_power_is_pd_on_s3() {
    let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let s = gegenbauer_coefficients(&g, dim(3), 300, 1e-13).unwrap();
    let tol = default_tol(&s, g.value(0.0));
    let v = schoenberg_test(&s, tol);
    assert_eq!(v.status, PdStatus::Pd, "{:?}", v.margins);
    assert!(s.weighted_partial_sum <= g.value(0.0) * (1.0 + 1e-6));
}

#[test]
fn truncated_power_transform_is_nonnegative() {
    let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let grid: Vec<f64> = (0..=400).map(|k| k as f64 * 0.25).collect();
    let v = bochner_test(&g, dim(3), &grid, 1e-9).unwrap();
    assert!(v.is_psd(), "{v:?}");
    assert!(v.margins.min_value >= -1e-9);
    assert!(v.sampled);
}

#[test]
fn gaussian_transform_on_the_line() {
    let g = KernelSpec::gaussian(1.0, 4.0 * PI).unwrap();
    let grid: Vec<f64> = (1..=200).map(|k| k as f64 * 0.1).collect();
    let v = bochner_test(&g, dim(1), &grid, 1e-10).unwrap();
    assert!(v.is_psd(), "{v:?}");
    // √π e^{−ξ²/4}
    let x = hankel_transform(&g, dim(1), 1.0).unwrap();
    let want = (2.0 * PI).sqrt() * (2.0 / PI).sqrt() * PI.sqrt() / 2.0 * (-0.25f64).exp();
    assert!((x - want).abs() < 1e-12 * want, "{x} {want}");
}

#[test]
fn gaussian_is_not_pd_on_the_circle() {
    let g = KernelSpec::gaussian(1.0, PI).unwrap();
    let s = gegenbauer_coefficients(&g, dim(1), 40, 1e-14).unwrap();
    let v = schoenberg_test(&s, 1e-13);
    assert_eq!(v.status, PdStatus::NotPd);
}

#[test]
fn zero_kernel_transform() {
    let v = bochner_test(&KernelSpec::zero(), dim(3), &[0.5, 1.0], 1e-12).unwrap();
    assert_eq!(v.status, PdStatus::Psd);
    assert_eq!(v.margins.max_value, 0.0);
}

#[test]
fn gram_agrees_with_schoenberg_for_d2_truncated_power() {
    let g = KernelSpec::truncated_power(0.8, 1.5).unwrap();
    let r = gram_oracle(&g, Space::Sphere(2), 200, 20, 11, 1e-8).unwrap();
    assert!(r.min_eigenvalue >= -1e-8 * g.value(0.0), "{}", r.min_eigenvalue);
    let s = gegenbauer_coefficients(&g, dim(2), 200, 1e-13).unwrap();
    let v = schoenberg_test(&s, default_tol(&s, g.value(0.0)));
    assert!(v.is_psd());
}

#[test]
fn inheritance_for_odd_dimensions() {
    let grid: Vec<f64> = (0..=200).map(|k| k as f64 * 0.25).collect();
    let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let r = inheritance_check(&g, 3, 120, &grid).unwrap();
    assert!(r.euclidean.is_psd() && r.sphere.status == PdStatus::Pd && !r.contradiction);
    let s = sinc_power_transform(KernelSpec::truncated_power(PI, 2.0).unwrap(), 3).unwrap();
    let r = inheritance_check(&s, 3, 120, &grid).unwrap();
    assert!(r.euclidean.is_psd() && r.sphere.is_psd() && !r.contradiction, "{r:?}");
    let r = inheritance_check(&KernelSpec::zero(), 3, 10, &grid).unwrap();
    assert_eq!(r.sphere.status, PdStatus::Psd);
    assert_eq!(r.euclidean.status, PdStatus::Psd);
}

#[test]
fn converse_table_converges() {
    let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
    let t = converse_check(&g, dim(3), 5.0, &[50, 100, 200, 400]).unwrap();
    assert!(t.monotone, "{t:?}");
    let last = t.rows.last().unwrap();
    assert!(last.gap <= 0.05 * t.target.abs(), "{t:?}");
    let tab = KernelSpec::tabulated(
        (0..=40).map(|k| k as f64 / 40.0).collect(),
        (0..=40)
            .map(|k| {
                let t = k as f64 / 40.0;
                t * (1.0 - t)
            })
            .collect(),
        Interpolation::Cubic,
    )
    .unwrap();
    let t = converse_check(&tab, dim(3), 2.0, &[50, 100, 200, 400]).unwrap();
    assert!(t.monotone, "{t:?}");
    let z = converse_check(&KernelSpec::zero(), dim(3), 2.0, &[50, 100]).unwrap();
    assert!(z.rows.iter().all(|r| r.s_n == 0.0) && z.target == 0.0);
}
