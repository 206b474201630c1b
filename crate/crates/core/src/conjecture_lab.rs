//! The boundary-case integrals `∫_0^θ (θ−t)^δ C_n^λ(cos t) sin^{2λ} t dt`,
//! the four-term decomposition of the `d = 2` integral, and audits of the
//! explicit constants used to prove its positivity for small `θ`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernels::Dimension;
use crate::quadrature::{integrate_endpoint_singular_with, QuadOptions, QuadratureResult, SingularWeight};
use crate::specfun::{bessel_j, gegenbauer_at_one, legendre_values, normalized_gegenbauer, LegendreValues};

pub const L55_CONSTANT: f64 = 42.6909;
pub const L56_CONSTANT: f64 = 92.1237;
pub const L57_CONSTANT: f64 = 30.1067;
pub const L58_CONSTANT: f64 = 164.9212;
/// `(C.1)`: `|P_n(cos t) − (t/sin t)^{1/2} J_0(Nt)| ≤ 0.1711/n` on `[0, π/2]`.
pub const C1_CONSTANT: f64 = 0.1711;
/// `(C.3)`: `|P_{n−1}^{(1,1)}(cos t)| ≤ 2.821 π^{3/2} (n−1)^{−1/2} t^{−3/2}`.
pub const C3_CONSTANT: f64 = 2.821;
/// Small-`u` moment bound `1 − (2/33) u²`, valid for `u ≤ √(33/2)`.
pub const CASE3_SMALL: f64 = 2.0 / 33.0;
/// Large-`u` moment bound `2.0963 / u³`, valid for `u ≥ √12`.
pub const CASE3_LARGE: f64 = 2.0963;
/// Case (ii) applies for `nθ < 2/35`.
pub const CASE2_B: f64 = 2.0 / 35.0;
/// Threshold on `nθ` quoted for Case (i).
pub const CASE1_A_QUOTED: f64 = 3.6959e6;
/// The quoted bound on the admissible `θ`.
pub const QUOTED_THETA_THRESHOLD: f64 = 1.2644e-21;
/// `B(2, 5/2) = 4/35`.
pub const MOMENT_0: f64 = 4.0 / 35.0;

fn legendre(n: usize, t: f64) -> LegendreValues {
    legendre_values(n, t.clamp(0.0, PI)).expect("t clamped to [0, pi]")
}

fn check_theta(theta: f64, hi: f64) -> Result<()> {
    if !(theta >= 0.0 && theta <= hi) {
        return Err(domain("theta", theta, "[0, upper limit]"));
    }
    Ok(())
}

/// `∫_0^θ f(t) (θ−t)^e dt` for an integrand built from Legendre values.
fn legendre_weighted<F: Fn(&LegendreValues, f64) -> f64>(
    n: usize,
    theta: f64,
    exponent: f64,
    f: F,
    abs_tol: f64,
) -> QuadratureResult {
    if theta == 0.0 {
        return QuadratureResult::ZERO;
    }
    // half-period panels; the refinement budget is small because at large nθ
    // the attainable accuracy is set by cancellation, not by the rule
    let width = PI / (n as f64 + 0.5);
    let opts = QuadOptions {
        abs_tol,
        rel_tol: 1e-12,
        max_evals: 2_000_000,
        ..QuadOptions::default()
    };
    let w = SingularWeight::right(exponent).expect("exponent > -1");
    integrate_endpoint_singular_with(|t| f(&legendre(n, t), t), 0.0, theta, w, Some(width), &opts)
}

/// `∫_0^θ (θ−t)^δ P_n(cos t) sin t dt`.
pub fn d2_integral(n: usize, theta: f64, delta: f64) -> Result<QuadratureResult> {
    check_theta(theta, PI)?;
    if !(delta >= 1.5) {
        return Err(domain("delta", delta, "[3/2, inf)"));
    }
    let tol = 1e-15 * theta.powf(delta + 2.0);
    Ok(legendre_weighted(n, theta, delta, |v, t| v.p * t.sin(), tol))
}

/// `∫_0^θ (θ−t)^δ C_n^λ(cos t) sin^{2λ} t dt` for `λ = (d−1)/2`.
pub fn conjecture_integral(d: Dimension, n: usize, theta: f64, delta: f64) -> Result<QuadratureResult> {
    check_theta(theta, PI)?;
    if !(delta > -1.0) {
        return Err(domain("delta", delta, "(-1, inf)"));
    }
    if d.d == 2 {
        return Ok(legendre_weighted(
            n,
            theta,
            delta,
            |v, t| v.p * t.sin(),
            1e-15 * theta.powf(delta + 2.0),
        ));
    }
    if theta == 0.0 {
        return Ok(QuadratureResult::ZERO);
    }
    let lambda = d.lambda;
    if lambda == 0.0 {
        return Err(domain("d", 1.0, "d >= 2"));
    }
    let at_one = gegenbauer_at_one(n, lambda);
    let scale = theta.powf(delta + 2.0 * lambda + 1.0);
    let opts = QuadOptions {
        abs_tol: 1e-15 * scale,
        rel_tol: 1e-12,
        ..QuadOptions::default()
    };
    let width = 2.0 * PI / (n as f64 + lambda);
    let w = SingularWeight::right(delta)?;
    let f = |t: f64| normalized_gegenbauer(n, lambda, t.cos()) * t.sin().powf(2.0 * lambda);
    Ok(integrate_endpoint_singular_with(f, 0.0, theta, w, Some(width), &opts).scale(at_one))
}

/// The four terms of `(4n(n+1)/3) A_n = I_{n,1} + R_{n,1} + R_{n,2} − R_{n,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct D2Terms {
    pub i_n1: f64,
    pub r_n1: f64,
    pub r_n2: f64,
    pub r_n3: f64,
    /// Sum of the quadrature error estimates of the four terms.
    pub abs_error_est: f64,
    pub converged: bool,
}

impl D2Terms {
    /// `I_{n,1} + R_{n,1} + R_{n,2} − R_{n,3}`.
    pub fn combination(&self) -> f64 {
        self.i_n1 + self.r_n1 + self.r_n2 - self.r_n3
    }

    fn max_abs(&self) -> f64 {
        [self.i_n1, self.r_n1, self.r_n2, self.r_n3]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Each term by its own quadrature.
pub fn d2_terms(n: usize, theta: f64) -> Result<D2Terms> {
    if n == 0 {
        return Err(domain("n", 0.0, "n >= 1"));
    }
    check_theta(theta, FRAC_PI_2)?;
    let nf = n as f64;
    let nn1 = nf * (nf + 1.0);
    // Tolerances follow the size of the bounds each term is audited against;
    // cancellation makes anything much tighter unattainable at large nθ.
    let x = (nf * theta).max(1.0);
    let th32 = theta.powf(1.5);
    let tol = |c: f64, p: f64| th32 * (c * x.powf(-p)).min(1e-13);
    let r3 = legendre_weighted(n, theta, -0.5, |v, t| v.p * t.sin(), tol(1e-6, 1.5));
    let r1 = legendre_weighted(
        n,
        theta,
        -0.5,
        |v, t| v.p11 * t.sin() * t.cos(),
        2.0 * nf * tol(1e-9, 2.0),
    )
    .scale(1.0 / (2.0 * nf));
    let r2 = legendre_weighted(
        n,
        theta,
        -0.5,
        |v, t| if t > 0.0 { v.one_minus_p / t.sin() } else { 0.0 },
        nn1 * tol(1e-9, 1.0),
    )
    .scale(1.0 / nn1);
    let i1 = legendre_weighted(
        n,
        theta,
        0.5,
        |v, t| {
            if t > 1e-150 {
                let s = t.sin();
                v.one_minus_p * t.cos() / (s * s)
            } else {
                nn1 / 4.0
            }
        },
        nn1 * tol(1e-9, 1.0) / 2.0,
    )
    .scale(2.0 / nn1);
    Ok(D2Terms {
        i_n1: i1.value,
        r_n1: r1.value,
        r_n2: r2.value,
        r_n3: r3.value,
        abs_error_est: i1.abs_error_est + r1.abs_error_est + r2.abs_error_est + r3.abs_error_est,
        converged: i1.converged && r1.converged && r2.converged && r3.converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct D2Decomposition {
    pub n: usize,
    pub theta: f64,
    /// `A_n = ∫_0^θ (θ−t)^{3/2} P_n(cos t) sin t dt`.
    pub a_n: f64,
    pub i_n1: f64,
    pub r_n1: f64,
    pub r_n2: f64,
    pub r_n3: f64,
    /// `|4n(n+1)/3 · A_n − (I_{n,1} + R_{n,1} + R_{n,2} − R_{n,3})|`.
    pub identity_residual: f64,
    /// `identity_residual / max(|4n(n+1)/3 · A_n|, |terms|)`.
    pub relative_residual: f64,
    pub abs_error_est: f64,
}

pub fn d2_decomposition(n: usize, theta: f64) -> Result<D2Decomposition> {
    let terms = d2_terms(n, theta)?;
    let a = d2_integral(n, theta, 1.5)?;
    let nf = n as f64;
    let lhs = 4.0 * nf * (nf + 1.0) / 3.0 * a.value;
    let identity_residual = (lhs - terms.combination()).abs();
    let scale = terms.max_abs().max(lhs.abs());
    Ok(D2Decomposition {
        n,
        theta,
        a_n: a.value,
        i_n1: terms.i_n1,
        r_n1: terms.r_n1,
        r_n2: terms.r_n2,
        r_n3: terms.r_n3,
        identity_residual,
        relative_residual: if scale > 0.0 { identity_residual / scale } else { 0.0 },
        abs_error_est: terms.abs_error_est + 4.0 * nf * (nf + 1.0) / 3.0 * a.abs_error_est,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum InequalityId {
    L55,
    L56,
    L57,
    L58,
    Case2,
    Case3,
    C1,
    C3,
    Legendre,
}

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::L55,
        InequalityId::L56,
        InequalityId::L57,
        InequalityId::L58,
        InequalityId::Case2,
        InequalityId::Case3,
        InequalityId::C1,
        InequalityId::C3,
        InequalityId::Legendre,
    ];

    /// Name of the grid variable the bound is stated in.
    pub fn variable(self) -> &'static str {
        match self {
            InequalityId::L55 | InequalityId::L56 | InequalityId::L57 | InequalityId::L58 | InequalityId::Case2 => {
                "n*theta"
            }
            InequalityId::Case3 => "u=(n+1/2)*theta",
            InequalityId::C1 | InequalityId::C3 | InequalityId::Legendre => "t",
        }
    }

    fn uses_case_one_terms(self) -> bool {
        matches!(
            self,
            InequalityId::L55 | InequalityId::L56 | InequalityId::L57 | InequalityId::L58
        )
    }
}

impl std::str::FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "L55" => InequalityId::L55,
            "L56" => InequalityId::L56,
            "L57" => InequalityId::L57,
            "L58" => InequalityId::L58,
            "CASE2" => InequalityId::Case2,
            "CASE3" => InequalityId::Case3,
            "C1" => InequalityId::C1,
            "C3" => InequalityId::C3,
            "LEGENDRE" => InequalityId::Legendre,
            other => return Err(Error::InvalidArgument(format!("unknown inequality id {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub n: usize,
    /// `θ`, or `t` for the pointwise polynomial bounds.
    pub theta: f64,
    /// Value of the variable named by [`InequalityId::variable`].
    pub var_value: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// Slack in the direction of the inequality, less the quadrature error
    /// estimate of `lhs`.
    pub margin: f64,
    pub pass: bool,
    /// Hypotheses of the inequality fail at this point.
    pub skipped: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundAuditReport {
    pub inequality_id: InequalityId,
    pub variable: String,
    pub rows: Vec<AuditRow>,
    pub all_pass: bool,
    pub skipped: usize,
}

impl BoundAuditReport {
    fn new(id: InequalityId, rows: Vec<AuditRow>) -> Self {
        let all_pass = rows.iter().filter(|r| !r.skipped).all(|r| r.margin >= 0.0);
        let skipped = rows.iter().filter(|r| r.skipped).count();
        Self {
            inequality_id: id,
            variable: id.variable().to_string(),
            rows,
            all_pass,
            skipped,
        }
    }

    pub fn checked(&self) -> usize {
        self.rows.len() - self.skipped
    }

    pub fn min_margin(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.skipped)
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min)
    }

    /// CSV with one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = format!("id,n,theta,{},lhs,rhs,margin,pass,skipped,note\n", self.variable);
        for r in &self.rows {
            let note = r
                .note
                .as_deref()
                .map(|n| format!("\"{}\"", n.replace('"', "\"\"")))
                .unwrap_or_default();
            out.push_str(&format!(
                "{:?},{},{:e},{:e},{:e},{:e},{:e},{},{},{}\n",
                self.inequality_id, r.n, r.theta, r.var_value, r.lhs, r.rhs, r.margin, r.pass, r.skipped, note
            ));
        }
        out
    }
}

fn skipped_row(n: usize, theta: f64, var_value: f64, why: &str) -> AuditRow {
    AuditRow {
        n,
        theta,
        var_value,
        lhs: f64::NAN,
        rhs: f64::NAN,
        margin: f64::NAN,
        pass: false,
        skipped: true,
        note: Some(why.to_string()),
    }
}

fn row(n: usize, theta: f64, var_value: f64, lhs: f64, rhs: f64, margin: f64, note: Option<String>) -> AuditRow {
    AuditRow {
        n,
        theta,
        var_value,
        lhs,
        rhs,
        margin,
        pass: margin >= 0.0,
        skipped: false,
        note,
    }
}

/// Largest `nθ` at which the L58 quantity is taken from direct
/// quadrature of `A_n`; beyond it the cancellation in `A_n` exceeds double
/// precision and the four-term combination is used instead.
pub const DIRECT_CHECK_LIMIT: f64 = 1e3;

fn case_one_rows(ids: &[InequalityId], n: usize, theta: f64) -> Result<Vec<AuditRow>> {
    let nf = n as f64;
    let x = nf * theta;
    if n == 0 || !(x >= 5.0) || !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Ok(ids
            .iter()
            .map(|_| skipped_row(n, theta, x, "requires n*theta >= 5 and theta in (0, pi/2]"))
            .collect());
    }
    let t = d2_terms(n, theta)?;
    let err = t.abs_error_est;
    let th32 = theta.powf(1.5);
    let big_n = nf + 0.5;
    let mut rows = Vec::with_capacity(ids.len());
    for &id in ids {
        rows.push(match id {
            InequalityId::L55 => {
                let rhs = L55_CONSTANT * x.powi(-2) * th32;
                row(n, theta, x, t.r_n1.abs(), rhs, rhs - t.r_n1.abs() - err, None)
            }
            InequalityId::L56 => {
                let main = SQRT_2 / x * (big_n * theta).sin() * (theta.sin() / theta).sqrt() * th32;
                let rhs = L56_CONSTANT * x.powf(-1.5) * th32;
                let lhs = (t.r_n3 - main).abs();
                let printed = t.r_n3.abs() <= main + rhs;
                let note = (!printed).then(|| "the unsigned form |R3| <= main + C(..) fails here".to_string());
                row(n, theta, x, lhs, rhs, rhs - lhs - err, note)
            }
            InequalityId::L57 => {
                let rhs = 1.5 / nf * theta.sqrt() - L57_CONSTANT * x.powf(-1.5) * th32;
                row(n, theta, x, t.i_n1, rhs, t.i_n1 - rhs - err, None)
            }
            InequalityId::L58 => {
                let rhs = (1.5 - SQRT_2) / x - L58_CONSTANT * x.powf(-1.5);
                let combined = t.combination() / th32;
                if x <= DIRECT_CHECK_LIMIT {
                    let a = d2_integral(n, theta, 1.5)?;
                    let c = 4.0 * nf * (nf + 1.0) / 3.0 / th32;
                    let lhs = c * a.value;
                    let note = Some(format!("four-term combination gives {combined:e}"));
                    row(n, theta, x, lhs, rhs, lhs - rhs - c * a.abs_error_est, note)
                } else {
                    let note = Some("lhs from the four-term combination".to_string());
                    row(n, theta, x, combined, rhs, combined - rhs - err / th32, note)
                }
            }
            _ => unreachable!("case one ids only"),
        });
    }
    Ok(rows)
}

/// `∫_0^1 (1−x)^{3/2} J_0(ux) x dx`.
pub fn case3_moment(u: f64) -> QuadratureResult {
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        ..QuadOptions::default()
    };
    let width = Some(2.0 * PI / u.max(1.0));
    let w = SingularWeight::right(1.5).expect("valid");
    integrate_endpoint_singular_with(
        |x| bessel_j(0.0, u * x).unwrap_or(f64::NAN) * x,
        0.0,
        1.0,
        w,
        width,
        &opts,
    )
}

/// Best applicable piecewise lower bound for [`case3_moment`], or `None` in
/// the gap `√(33/2) < u < √12` (empty, since `√12 < √(33/2)`).
pub fn case3_piecewise_bound(u: f64) -> Option<f64> {
    let small = (u <= (33.0f64 / 2.0).sqrt()).then_some(MOMENT_0 * (1.0 - CASE3_SMALL * u * u));
    let large = (u >= 12f64.sqrt()).then(|| MOMENT_0 * CASE3_LARGE / u.powi(3));
    match (small, large) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

fn other_rows(id: InequalityId, n: usize, theta: f64) -> Result<AuditRow> {
    let nf = n as f64;
    Ok(match id {
        InequalityId::Case2 => {
            let x = nf * theta;
            // the bound |sin t/t − 1| ≤ t ≤ nt in the argument needs n ≥ 1
            if n == 0 || !(x < CASE2_B) || !(theta > 0.0 && theta <= PI) {
                return Ok(skipped_row(n, theta, x, "requires n >= 1 and n*theta < 2/35"));
            }
            let a = d2_integral(n, theta, 1.5)?;
            let s = theta.powf(-3.5);
            let lhs = a.value * s;
            let rhs = MOMENT_0 - 2.0 * x;
            row(n, theta, x, lhs, rhs, lhs - rhs - a.abs_error_est * s, None)
        }
        InequalityId::Case3 => {
            let u = (nf + 0.5) * theta;
            let Some(rhs) = case3_piecewise_bound(u) else {
                return Ok(skipped_row(n, theta, u, "no moment bound applies"));
            };
            let m = case3_moment(u);
            row(n, theta, u, m.value, rhs, m.value - rhs - m.abs_error_est, None)
        }
        InequalityId::C1 => {
            let t = theta;
            if n == 0 || !(0.0..=FRAC_PI_2).contains(&t) {
                return Ok(skipped_row(n, t, t, "requires n >= 1 and t in [0, pi/2]"));
            }
            let ratio = if t == 0.0 { 1.0 } else { t / t.sin() };
            let approx = ratio.sqrt() * bessel_j(0.0, (nf + 0.5) * t)?;
            let lhs = (legendre(n, t).p - approx).abs();
            let rhs = C1_CONSTANT / nf;
            row(n, t, t, lhs, rhs, rhs - lhs, None)
        }
        InequalityId::C3 => {
            let t = theta;
            if n < 2 || !(t > 0.0 && t <= FRAC_PI_2) {
                return Ok(skipped_row(n, t, t, "requires n >= 2 and t in (0, pi/2]"));
            }
            let lhs = legendre(n, t).p11.abs();
            let rhs = C3_CONSTANT * PI.powf(1.5) / ((nf - 1.0).sqrt() * t.powf(1.5));
            row(n, t, t, lhs, rhs, rhs - lhs, None)
        }
        InequalityId::Legendre => {
            let t = theta;
            if n == 0 || !(t > 0.0 && t <= FRAC_PI_2) {
                return Ok(skipped_row(n, t, t, "requires n >= 1 and t in (0, pi/2]"));
            }
            let lhs = legendre(n, t).p.abs();
            let rhs = 1.0 / (nf * t).sqrt();
            row(n, t, t, lhs, rhs, rhs - lhs, None)
        }
        _ => unreachable!("handled by case_one_rows"),
    })
}

/// Audits several inequalities on one grid of `(n, θ)` (or `(n, t)`) points,
/// computing the Case (i) decomposition terms once per point.
pub fn bounds_audit_many(ids: &[InequalityId], grid: &[(usize, f64)]) -> Result<Vec<BoundAuditReport>> {
    let case_one: Vec<InequalityId> = ids.iter().copied().filter(|i| i.uses_case_one_terms()).collect();
    let per_point: Vec<Vec<AuditRow>> = grid
        .par_iter()
        .map(|&(n, theta)| -> Result<Vec<AuditRow>> {
            let mut one = if case_one.is_empty() {
                Vec::new()
            } else {
                case_one_rows(&case_one, n, theta)?
            }
            .into_iter();
            ids.iter()
                .map(|&id| {
                    if id.uses_case_one_terms() {
                        Ok(one.next().expect("one row per case-one id"))
                    } else {
                        other_rows(id, n, theta)
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(ids
        .iter()
        .enumerate()
        .map(|(k, &id)| BoundAuditReport::new(id, per_point.iter().map(|rows| rows[k].clone()).collect()))
        .collect())
}

pub fn bounds_audit(id: InequalityId, grid: &[(usize, f64)]) -> Result<BoundAuditReport> {
    Ok(bounds_audit_many(&[id], grid)?.remove(0))
}

/// Log-spaced `nθ` values in `[lo, hi]`, `per_decade` per decade, endpoints
/// included.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).ceil().max(1.0) as usize;
    (0..=steps)
        .map(|k| lo * 10f64.powf(decades * k as f64 / steps as f64))
        .collect()
}

/// Hypothesis-respecting grid for each inequality.
pub fn default_audit_grid(id: InequalityId) -> Vec<(usize, f64)> {
    match id {
        InequalityId::L55 | InequalityId::L56 | InequalityId::L57 | InequalityId::L58 => {
            let mut grid = Vec::new();
            for x in log_grid(5.0, 1e7, 4) {
                let thetas: &[f64] = if x <= 1e5 {
                    &[FRAC_PI_2, 0.3, 0.02]
                } else {
                    &[FRAC_PI_2]
                };
                for &th in thetas {
                    let n = (x / th).round().max(1.0) as usize;
                    // keep nθ = x exactly enough while respecting nθ ≥ 5
                    let theta = (x / n as f64).min(FRAC_PI_2);
                    if n as f64 * theta >= 5.0 {
                        grid.push((n, theta));
                    }
                }
            }
            grid
        }
        InequalityId::Case2 => {
            let mut grid = Vec::new();
            for n in [0usize, 1, 2, 3, 5, 10, 50, 200, 1000] {
                for k in 1..=12 {
                    let x = CASE2_B * k as f64 / 12.5;
                    let theta = if n == 0 { x } else { x / n as f64 };
                    grid.push((n, theta));
                }
            }
            grid.push((3, 0.01));
            grid
        }
        InequalityId::Case3 => {
            // only u enters; the point is stored as (n, θ) = (0, 2u)
            let hi = (33.0f64 / 2.0).sqrt();
            let mut us: Vec<f64> = (0..=200).map(|k| CASE2_B + (hi - CASE2_B) * k as f64 / 200.0).collect();
            us.extend(log_grid(12f64.sqrt(), 1e3, 100));
            us.extend(log_grid(1e3, 1e5, 10).into_iter().skip(1));
            us.into_iter().map(|u| (0usize, 2.0 * u)).collect()
        }
        InequalityId::C1 => (5..=100)
            .flat_map(|n| (0..=2000).map(move |k| (n, FRAC_PI_2 * k as f64 / 2000.0)))
            .collect(),
        InequalityId::C3 | InequalityId::Legendre => {
            let mut ns: Vec<usize> = (2..=200).collect();
            ns.extend([300, 500, 1000, 5000, 20_000, 100_000, 1_000_000]);
            ns.into_iter()
                .flat_map(|n| (1..=400).map(move |k| (n, FRAC_PI_2 * k as f64 / 400.0)))
                .collect()
        }
    }
}

/// `A = (C / (3/2 − √2))²`, the smallest `nθ` at which the Case (i) lower
/// bound is positive.
pub fn case1_threshold() -> f64 {
    (L58_CONSTANT / (1.5 - SQRT_2)).powi(2)
}

/// `θ < (B / 0.1711) √(2/π) (4/35) 2.0963 / A³`, the Case (iii) requirement.
pub fn positivity_threshold(a: f64, b: f64) -> f64 {
    b / C1_CONSTANT * (2.0 / PI).sqrt() * MOMENT_0 * CASE3_LARGE / a.powi(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub a: f64,
    pub b: f64,
    pub recomputed: f64,
    pub quoted: f64,
    /// The same formula evaluated with the quoted `A = 3.6959e6`.
    pub with_quoted_a: f64,
}

pub fn threshold_report() -> ThresholdReport {
    let a = case1_threshold();
    ThresholdReport {
        a,
        b: CASE2_B,
        recomputed: positivity_threshold(a, CASE2_B),
        quoted: QUOTED_THETA_THRESHOLD,
        with_quoted_a: positivity_threshold(CASE1_A_QUOTED, CASE2_B),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case3Bound {
    pub u: f64,
    /// `√(2/π)·(piecewise bound) − 0.1711 θ / B`.
    pub lower_bound: f64,
    pub piecewise_bound: f64,
    /// `∫_0^1 (1−x)^{3/2} J_0(ux) x dx` by quadrature.
    pub direct_moment: f64,
    /// `θ^{−2} ∫_0^θ (1−t/θ)^{3/2} P_n(cos t) sin t dt` by quadrature.
    pub scaled_integral: f64,
}

/// The Case (iii) chain for `B ≤ nθ ≤ A` with `B = 2/35` and the recomputed `A`.
pub fn case3_lower_bound(n: usize, theta: f64) -> Result<Case3Bound> {
    let x = n as f64 * theta;
    let a = case1_threshold();
    if !(x >= CASE2_B && x <= a) {
        return Err(Error::Regime(format!("n*theta = {x} outside [{CASE2_B}, {a}]")));
    }
    let u = (n as f64 + 0.5) * theta;
    let piecewise_bound =
        case3_piecewise_bound(u).ok_or_else(|| Error::Regime(format!("no moment bound at u = {u}")))?;
    let lower_bound = (2.0 / PI).sqrt() * piecewise_bound - C1_CONSTANT * theta / CASE2_B;
    let direct_moment = case3_moment(u).value;
    let scaled_integral = if theta <= PI {
        d2_integral(n, theta, 1.5)?.value * theta.powf(-3.5)
    } else {
        f64::NAN
    };
    Ok(Case3Bound {
        u,
        lower_bound,
        piecewise_bound,
        direct_moment,
        scaled_integral,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub d: u32,
    pub delta: f64,
    /// Inclusive degree range.
    pub n_range: (usize, usize),
    pub theta_grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub n: usize,
    pub theta: f64,
    pub value: f64,
    pub abs_error_est: f64,
    /// `value > 10 · abs_error_est`.
    pub resolved_positive: bool,
    /// Positivity at this cell is covered by a proof rather than exploratory.
    pub guaranteed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub cells: Vec<SweepCell>,
    pub min_value: f64,
    pub argmin: Option<(usize, f64)>,
    /// Cells whose value is not positive beyond ten times the error estimate.
    pub failures: Vec<(usize, f64)>,
    /// `θ` at or below which `d = 2` cells are guaranteed.
    pub guaranteed_threshold: f64,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    d: u32,
    delta: f64,
    cells: usize,
    guaranteed_cells: usize,
    min_value: f64,
    argmin: Option<(usize, f64)>,
    failures: &'a [(usize, f64)],
}

impl SweepReport {
    /// One row per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,theta,value,abs_error_est,resolved_positive,guaranteed\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{:e},{:e},{:e},{},{}\n",
                c.n, c.theta, c.value, c.abs_error_est, c.resolved_positive, c.guaranteed
            ));
        }
        out
    }

    /// `{min_value, argmin, failures[], ...}`.
    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&SweepSummary {
            d: self.config.d,
            delta: self.config.delta,
            cells: self.cells.len(),
            guaranteed_cells: self.cells.iter().filter(|c| c.guaranteed).count(),
            min_value: self.min_value,
            argmin: self.argmin,
            failures: &self.failures,
        })
        .expect("summary serializes")
    }

    /// Two columns: `θ` and the minimum over `n` of the value.
    pub fn plot_csv(&self) -> String {
        let mut out = String::from("theta,min_value\n");
        for &th in &self.config.theta_grid {
            let m = self
                .cells
                .iter()
                .filter(|c| c.theta == th)
                .map(|c| c.value)
                .fold(f64::INFINITY, f64::min);
            if m.is_finite() {
                out.push_str(&format!("{th:e},{m:e}\n"));
            }
        }
        out
    }
}

/// Evaluates the conjectured-positive integral on every `(n, θ)` cell.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    if ![2, 3, 5, 7].contains(&config.d) {
        return Err(domain("d", config.d as f64, "one of 2, 3, 5, 7"));
    }
    let dim = Dimension::new(config.d)?;
    if !(config.delta >= dim.lambda + 1.0) {
        return Err(domain("delta", config.delta, "[(d+1)/2, inf)"));
    }
    let threshold = threshold_report().recomputed;
    let (lo, hi) = config.n_range;
    let cells_in: Vec<(usize, f64)> = if lo > hi {
        Vec::new()
    } else {
        (lo..=hi)
            .flat_map(|n| config.theta_grid.iter().map(move |&t| (n, t)))
            .collect()
    };
    let cells: Vec<SweepCell> = cells_in
        .par_iter()
        .map(|&(n, theta)| -> Result<SweepCell> {
            let r = conjecture_integral(dim, n, theta, config.delta)?;
            Ok(SweepCell {
                n,
                theta,
                value: r.value,
                abs_error_est: r.abs_error_est,
                resolved_positive: r.converged && r.value > 10.0 * r.abs_error_est && r.value > 0.0,
                guaranteed: config.d % 2 == 1 || theta <= threshold,
            })
        })
        .collect::<Result<_>>()?;
    let (min_value, argmin) = cells.iter().fold((f64::INFINITY, None), |(m, a), c| {
        if c.value < m {
            (c.value, Some((c.n, c.theta)))
        } else {
            (m, a)
        }
    });
    let failures = cells
        .iter()
        .filter(|c| !c.resolved_positive)
        .map(|c| (c.n, c.theta))
        .collect();
    Ok(SweepReport {
        config: config.clone(),
        cells,
        min_value: if argmin.is_some() { min_value } else { f64::NAN },
        argmin,
        failures,
        guaranteed_threshold: threshold,
    })
}
