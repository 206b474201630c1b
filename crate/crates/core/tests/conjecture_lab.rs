use std::f64::consts::PI;

use approx::assert_relative_eq;

use spherepd::conjecture_lab::*;
use spherepd::kernels::Dimension;
use spherepd::Error;

#[test]
fn four_term_identity() {
    for n in [1, 2, 5, 17, 60] {
        for theta in [0.05, 0.4, 1.0, PI / 2.0] {
            let dec = d2_decomposition(n, theta).unwrap();
            assert!(dec.relative_residual <= 1e-8, "n = {n}, theta = {theta}: {dec:?}");
            assert!(dec.r_n2 >= -1e-12);
        }
    }
}

#[test]
fn conjecture_integral_agrees_with_legendre_form() {
    let a = conjecture_integral(Dimension::new(2).unwrap(), 7, 0.8, 1.5).unwrap();
    let b = d2_integral(7, 0.8, 1.5).unwrap();
    assert_relative_eq!(a.value, b.value, max_relative = 1e-10);
}

#[test]
fn threshold_recomputation() {
    let r = threshold_report();
    assert_relative_eq!(r.a, 3_695_861.645, max_relative = 1e-9);
    assert_relative_eq!(r.recomputed, 1.264591e-21, max_relative = 1e-6);
    assert_relative_eq!(r.with_quoted_a, 1.26455e-21, max_relative = 1e-5);
    assert_eq!(r.quoted, 1.2644e-21);
    assert!(r.recomputed > r.quoted);
}

#[test]
fn case_one_audits_on_a_small_grid() {
    let grid: Vec<(usize, f64)> = [(50, 0.3), (400, PI / 2.0), (2_000, 0.02), (30_000, PI / 2.0)].to_vec();
    let reports = bounds_audit_many(
        &[
            InequalityId::L55,
            InequalityId::L56,
            InequalityId::L57,
            InequalityId::L58,
        ],
        &grid,
    )
    .unwrap();
    for r in &reports {
        assert!(r.all_pass, "{:?}: {}", r.inequality_id, r.to_csv());
        assert_eq!(r.checked(), grid.len());
        assert!(r.min_margin() > 0.0);
    }
}

#[test]
fn case_two_skips_degree_zero() {
    let r = bounds_audit(InequalityId::Case2, &[(0, 0.01), (1, 0.01), (3, 0.005)]).unwrap();
    assert_eq!(r.skipped, 1);
    assert!(r.rows[0].skipped && r.rows[0].note.is_some());
    assert!(r.all_pass);
}

#[test]
fn case_three_regime() {
    assert!(matches!(case3_lower_bound(1, 0.01), Err(Error::Regime(_))));
    let b = case3_lower_bound(20, 0.05).unwrap();
    assert_relative_eq!(b.u, 20.5 * 0.05, max_relative = 1e-15);
    assert!(b.piecewise_bound > 0.0);
    assert!(b.direct_moment >= b.piecewise_bound);
}

#[test]
fn inequality_ids_round_trip() {
    for id in InequalityId::ALL {
        let text = serde_json::to_string(&id).unwrap();
        let back: InequalityId = text.trim_matches('"').parse().unwrap();
        assert_eq!(back, id);
    }
    assert!("L99".parse::<InequalityId>().is_err());
}

#[test]
fn small_sweeps() {
    let r = sweep(&SweepConfig {
        d: 3,
        delta: 2.0,
        n_range: (0, 40),
        theta_grid: vec![0.1, 1.0, PI],
    })
    .unwrap();
    assert_eq!(r.cells.len(), 41 * 3);
    assert!(r.failures.is_empty());
    assert!(r.cells.iter().all(|c| c.guaranteed));

    let r = sweep(&SweepConfig {
        d: 2,
        delta: 1.5,
        n_range: (0, 20),
        theta_grid: vec![1e-22, 1e-3],
    })
    .unwrap();
    assert!(r.failures.is_empty());
    assert!(r.cells.iter().any(|c| c.guaranteed) && r.cells.iter().any(|c| !c.guaranteed));

    assert!(sweep(&SweepConfig {
        d: 4,
        delta: 3.0,
        n_range: (0, 2),
        theta_grid: vec![1.0]
    })
    .is_err());
}
