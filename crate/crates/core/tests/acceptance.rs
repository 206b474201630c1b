//! Acceptance suite: one PASS/FAIL line per criterion, with timing.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherepd::conjecture_lab::*;
use spherepd::decomposition::{lemma23_coeffs, verify_lemma23};
use spherepd::kernels::{fractional_lift_check, sinc_power_transform, Dimension, KernelSpec};
use spherepd::pd_tester::*;
use spherepd::quadrature::{integrate_endpoint_singular_with, QuadOptions, SingularWeight};

type Check = Result<(bool, String), String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn dim(d: u32) -> Dimension {
    Dimension::new(d).expect("valid dimension")
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn lemma23() -> Check {
    let grid: Vec<f64> = (0..=100).map(|k| PI * k as f64 / 100.0).collect();
    let mut min_coeff = f64::INFINITY;
    let mut max_residual = 0.0f64;
    for lambda in 1..=3u32 {
        for n in 0..=50usize {
            let c = lemma23_coeffs(n, lambda).map_err(err)?;
            min_coeff = c.iter().map(|(_, a)| a).fold(min_coeff, f64::min);
            max_residual = max_residual.max(verify_lemma23(n, lambda, &grid).map_err(err)?);
        }
    }
    Ok((
        min_coeff > 0.0 && max_residual <= 1e-9,
        format!("min a_nj = {min_coeff:.3e}, max residual = {max_residual:.3e}"),
    ))
}

fn certified_audits() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut summarize = |r: &BoundAuditReport| {
        ok &= r.all_pass && r.checked() > 0;
        let violations = r.rows.iter().filter(|x| !x.skipped && !x.pass).count();
        parts.push(format!(
            "{:?}: {} pts, {} violations, min margin {:.2e}",
            r.inequality_id,
            r.checked(),
            violations,
            r.min_margin()
        ));
    };
    let case_one = [
        InequalityId::L55,
        InequalityId::L56,
        InequalityId::L57,
        InequalityId::L58,
    ];
    let grid = default_audit_grid(InequalityId::L55);
    for r in bounds_audit_many(&case_one, &grid).map_err(err)? {
        summarize(&r);
    }
    for id in [
        InequalityId::Case3,
        InequalityId::C1,
        InequalityId::C3,
        InequalityId::Legendre,
    ] {
        summarize(&bounds_audit(id, &default_audit_grid(id)).map_err(err)?);
    }
    let max_x = grid.iter().map(|&(n, t)| n as f64 * t).fold(0.0, f64::max);
    parts.push(format!("n*theta up to {max_x:.2e}"));
    Ok((ok, parts.join("; ")))
}

fn decomposition_identity() -> Check {
    let mut cells = Vec::new();
    for n in 1..=100usize {
        for k in 1..=30 {
            let theta = 0.05 * k as f64;
            if theta <= PI / 2.0 {
                cells.push((n, theta));
            }
        }
    }
    let mut worst = 0.0f64;
    let mut min_r2 = f64::INFINITY;
    let mut sign_mismatch = 0;
    for (n, theta) in cells.iter().copied() {
        let d = d2_decomposition(n, theta).map_err(err)?;
        worst = worst.max(d.relative_residual);
        min_r2 = min_r2.min(d.r_n2);
        let rebuilt = d.i_n1 + d.r_n1 + d.r_n2 - d.r_n3;
        if rebuilt.abs() > 1e-8 * d.relative_residual.max(1e-300) && (rebuilt > 0.0) != (d.a_n > 0.0) {
            sign_mismatch += 1;
        }
    }
    Ok((
        worst <= 1e-8 && min_r2 >= -1e-12 && sign_mismatch == 0,
        format!(
            "{} cells, max relative residual = {worst:.3e}, min R_n2 = {min_r2:.3e}, sign mismatches = {sign_mismatch}",
            cells.len()
        ),
    ))
}

fn conjecture_sweeps() -> Check {
    let d3 = sweep(&SweepConfig {
        d: 3,
        delta: 2.0,
        n_range: (0, 200),
        theta_grid: (1..=63).map(|k| k as f64 * PI / 64.0).collect(),
    })
    .map_err(err)?;
    let thetas = vec![
        1e-3, 5e-4, 2e-4, 1e-4, 1e-5, 1e-6, 1e-8, 1e-12, 1e-16, 1e-20, 1e-21, 1e-22,
    ];
    let d2 = sweep(&SweepConfig {
        d: 2,
        delta: 1.5,
        n_range: (0, 500),
        theta_grid: thetas,
    })
    .map_err(err)?;
    let guaranteed = d2.cells.iter().filter(|c| c.guaranteed).count();
    let exploratory = d2.cells.len() - guaranteed;
    Ok((
        d3.failures.is_empty() && d2.failures.is_empty() && guaranteed > 0 && exploratory > 0,
        format!(
            "d=3: {} cells, {} failures, min {:.3e}; d=2: {} cells ({guaranteed} guaranteed below theta = {:.4e}, {exploratory} exploratory), {} failures, min {:.3e}",
            d3.cells.len(),
            d3.failures.len(),
            d3.min_value,
            d2.cells.len(),
            d2.guaranteed_threshold,
            d2.failures.len(),
            d2.min_value
        ),
    ))
}

fn cross_agreement() -> Check {
    let d = dim(3);
    let mut pd = vec![
        KernelSpec::truncated_power(1.0, 2.0).map_err(err)?,
        KernelSpec::truncated_power(0.6, 3.0).map_err(err)?,
        KernelSpec::truncated_power(PI / 2.0, 2.5).map_err(err)?,
    ];
    pd.push(sinc_power_transform(KernelSpec::truncated_power(PI, 2.0).map_err(err)?, 3).map_err(err)?);
    pd.push(sinc_power_transform(KernelSpec::truncated_power(2.0, 3.0).map_err(err)?, 3).map_err(err)?);
    let indefinite = [
        vec![1.0, -0.4, 0.3, 0.2],
        vec![1.0, 0.5, -0.3],
        vec![0.5, 0.4, 0.3, 0.2, -0.25],
        vec![-0.2, 1.0, 0.5],
        vec![1.0, 0.0, 0.6, -0.5, 0.3],
    ];
    let xi: Vec<f64> = (0..=200).map(|k| k as f64 * 0.25).collect();
    let mut ok = true;
    let mut worst_pd_eig = f64::INFINITY;
    let mut lines = Vec::new();
    for (k, g) in pd.iter().enumerate() {
        let g0 = g.value(0.0);
        let s = gegenbauer_coefficients(g, d, 200, 1e-13).map_err(err)?;
        let sch = schoenberg_test(&s, default_tol(&s, g0));
        let gram = gram_oracle(g, Space::Sphere(3), 200, 20, 7, 1e-8).map_err(err)?;
        worst_pd_eig = worst_pd_eig.min(gram.min_eigenvalue / g0);
        let mut agree = sch.is_psd() && gram.verdict.is_psd() && gram.min_eigenvalue >= -1e-8 * g0;
        // Euclidean check applies to the truncated powers, whose radial profile is the kernel itself.
        if k < 3 {
            let boch = bochner_test(g, d, &xi, 1e-9 * g0).map_err(err)?;
            agree &= boch.is_psd();
        }
        ok &= agree;
        lines.push(if agree { "+" } else { "x" });
    }
    for coeffs in indefinite {
        let g = KernelSpec::expansion(1.0, coeffs).map_err(err)?;
        let s = gegenbauer_coefficients(&g, d, 40, 1e-13).map_err(err)?;
        let sch = schoenberg_test(&s, default_tol(&s, g.value(0.0).abs().max(1.0)));
        let gram = gram_oracle(&g, Space::Sphere(3), 200, 20, 7, 1e-8).map_err(err)?;
        let agree = sch.status == PdStatus::NotPd && gram.verdict.status == PdStatus::NotPd;
        ok &= agree;
        lines.push(if agree { "-" } else { "x" });
    }
    Ok((
        ok,
        format!(
            "verdicts [{}] (+ PD agreed, - NotPD agreed, x disagreement), min PD Gram eigenvalue / g(0) = {worst_pd_eig:.3e}",
            lines.join("")
        ),
    ))
}

fn transform_identities() -> Check {
    let ball = KernelSpec::indicator(1.0).map_err(err)?;
    let mut worst_hankel = 0.0f64;
    for k in 0..=499 {
        let xi = 0.1 + (50.0 - 0.1) * k as f64 / 499.0;
        let got = hankel_transform(&ball, dim(3), xi).map_err(err)?;
        let want = 4.0 * PI * (xi.sin() - xi * xi.cos()) / xi.powi(3);
        worst_hankel = worst_hankel.max(((got - want) / want).abs());
    }

    let mut worst_moment = 0.0f64;
    for theta in [0.01, 0.1, 0.5, 1.0, 2.0, 3.0] {
        let opts = QuadOptions::with_tol(1e-16 * theta * theta);
        let w = SingularWeight::right(1.5).map_err(err)?;
        let r = integrate_endpoint_singular_with(|t| t, 0.0, theta, w, None, &opts);
        let moment = r.value * theta.powf(-1.5);
        let want = 4.0 / 35.0 * theta * theta;
        worst_moment = worst_moment.max(((moment - want) / want).abs());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_lift = 0.0f64;
    let opts = QuadOptions::with_tol(1e-12);
    for _ in 0..50 {
        let d = dim([2, 3, 5][rng.random_range(0..3)]);
        let g = KernelSpec::truncated_power(rng.random_range(0.5..PI), rng.random_range(1.0..4.0)).map_err(err)?;
        let delta1 = rng.random_range(1.0..4.0);
        let delta2 = rng.random_range(0.0..delta1 - 0.2);
        let theta = rng.random_range(0.3..PI);
        let n = rng.random_range(0..12);
        let c = fractional_lift_check(&g, delta1, delta2, theta, n, d, &opts).map_err(err)?;
        let scale = c.lhs.abs().max(c.rhs.abs()).max(1e-300);
        worst_lift = worst_lift.max(c.residual / scale.max(1e-6));
    }
    Ok((
        worst_hankel <= 1e-9 && worst_moment <= 1e-12 && worst_lift <= 1e-8,
        format!(
            "ball transform rel err = {worst_hankel:.3e}, case (ii) moment rel err = {worst_moment:.3e}, lift residual = {worst_lift:.3e}"
        ),
    ))
}

fn converse_table() -> Check {
    let g = KernelSpec::truncated_power(1.0, 2.0).map_err(err)?;
    let t = converse_check(&g, dim(3), 5.0, &[50, 100, 200, 400]).map_err(err)?;
    let last = t.rows.last().expect("four rows");
    let gaps: Vec<String> = t.rows.iter().map(|r| format!("{:.3e}", r.gap)).collect();
    Ok((
        t.monotone && last.gap <= 0.05 * t.target.abs(),
        format!(
            "target = {:.6e}, gaps = [{}], final/target = {:.3e}",
            t.target,
            gaps.join(", "),
            last.gap / t.target.abs()
        ),
    ))
}

fn determinism() -> Check {
    let g = KernelSpec::truncated_power(0.8, 1.5).map_err(err)?;
    let a = gram_oracle(&g, Space::Sphere(2), 60, 3, 99, 1e-8).map_err(err)?;
    let b = gram_oracle(&g, Space::Sphere(2), 60, 3, 99, 1e-8).map_err(err)?;
    let s1 = gegenbauer_coefficients(&g, dim(2), 60, 1e-13).map_err(err)?;
    let s2 = gegenbauer_coefficients(&g, dim(2), 60, 1e-13).map_err(err)?;
    Ok((
        a.per_trial == b.per_trial && s1.coefficients == s2.coefficients,
        "repeated seeded runs are bit-identical".to_string(),
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "half-angle coefficients positive, identity residual <= 1e-9",
            budget: Duration::from_secs(30),
            run: lemma23,
        },
        Criterion {
            id: 2,
            name: "certified-constant audits, zero violations",
            budget: Duration::from_secs(180),
            run: certified_audits,
        },
        Criterion {
            id: 3,
            name: "d=2 four-term identity <= 1e-8 relative, R_n2 >= -1e-12",
            budget: Duration::from_secs(120),
            run: decomposition_identity,
        },
        Criterion {
            id: 4,
            name: "conjecture sweeps positive (d=3 proved, d=2 small theta)",
            budget: Duration::from_secs(300),
            run: conjecture_sweeps,
        },
        Criterion {
            id: 5,
            name: "Schoenberg / Bochner / Gram verdicts agree on 10 kernels",
            budget: Duration::from_secs(300),
            run: cross_agreement,
        },
        Criterion {
            id: 6,
            name: "transform identities (ball, case (ii) moment, Beta lift)",
            budget: Duration::from_secs(120),
            run: transform_identities,
        },
        Criterion {
            id: 7,
            name: "converse table monotone, final gap <= 5%",
            budget: Duration::from_secs(60),
            run: converse_table,
        },
    ];
    let start = Instant::now();
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let outcome = (c.run)();
        let elapsed = t.elapsed();
        let (pass, detail) = match outcome {
            Ok((_, detail)) if elapsed > c.budget => (false, format!("{detail}; over budget {:?}", c.budget)),
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{}] {} ({:.1}s) :: {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    let total = start.elapsed();
    let (det_ok, det_detail) = determinism().unwrap_or_else(|e| (false, e));
    let pass8 = det_ok && total < Duration::from_secs(600);
    if !pass8 {
        failed += 1;
    }
    println!(
        "{} [8] suite wall-clock < 10 min and deterministic ({:.1}s) :: {det_detail}",
        if pass8 { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
