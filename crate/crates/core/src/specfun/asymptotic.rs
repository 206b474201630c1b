//! Cosine expansions, the Jacobi–Bessel approximation and large-degree
//! Legendre evaluation.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::bessel::bessel;
use super::dd::{cos_sin_phase, Dd};
use super::gamma::{gamma, ln_gamma_ratio};
use super::poly::{legendre_values_recurrence, LegendreValues};
use crate::error::{domain, Error, Result};

/// Certified constant for `|P_n(cos t) − (t/sin t)^{1/2} J_0((n+1/2)t)|·n` on `[0, π/2]`.
pub const LEGENDRE_BESSEL_CONSTANT: f64 = 0.1711;

/// Empirical threshold used for `α ≠ 0`, where no constant is available.
pub const JACOBI_BESSEL_AUDIT_CONSTANT: f64 = 3.0;

/// Closest admissible approach to `t = π`.
pub const ENDPOINT_MARGIN: f64 = 1e-3;

/// Degree from which [`legendre_values`] switches to the asymptotic paths.
pub const LARGE_DEGREE: usize = 200;

/// `C_n^λ(cos θ) = Σ c · cos(fθ)` as `(f, c)` pairs, with `±` frequencies folded.
///
/// Coefficients are `(λ)_k (λ)_{n−k} / (k!(n−k)!)`, formed by a ratio
/// recursion so no Gamma values overflow; they are all positive for `λ > 0`.
pub fn cosine_expansion(n: usize, lambda: f64) -> Result<Vec<(usize, f64)>> {
    if lambda == 0.0 || lambda.is_nan() {
        return Err(domain("lambda", lambda, "nonzero"));
    }
    let mut r = vec![1.0; n + 1];
    for k in 0..n {
        r[k + 1] = r[k] * (lambda + k as f64) / (k + 1) as f64;
    }
    Ok((0..=n / 2)
        .map(|k| {
            let c = r[k] * r[n - k];
            let f = n - 2 * k;
            (f, if f == 0 { c } else { 2.0 * c })
        })
        .collect())
}

/// Bessel-type approximation of a normalized symmetric Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticApprox {
    pub value: f64,
    pub error_bound: f64,
    #[serde(rename = "N")]
    pub big_n: f64,
    /// Whether `error_bound` is a proved constant rather than an audit threshold.
    pub certified: bool,
}

/// `2^α Γ(α+1) (t/sin t)^{α+1/2} j_α(Nt)` with `N = n + α + 1/2`, approximating
/// `P_n^{(α,α)}(cos t)/P_n^{(α,α)}(1)`.
pub fn jacobi_bessel_approx(n: usize, alpha: f64, t: f64) -> Result<AsymptoticApprox> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if alpha.is_nan() || alpha <= -0.5 {
        return Err(domain("alpha", alpha, "(-1/2, inf)"));
    }
    if t.is_nan() || !(0.0..=PI - ENDPOINT_MARGIN).contains(&t) {
        return Err(domain("t", t, "[0, pi - 1e-3]"));
    }
    let big_n = n as f64 + alpha + 0.5;
    let ratio = if t == 0.0 { 1.0 } else { t / t.sin() };
    let value = 2f64.powf(alpha) * gamma(alpha + 1.0) * ratio.powf(alpha + 0.5) * bessel(alpha, big_n * t, true)?;
    let certified = alpha == 0.0 && t <= FRAC_PI_2;
    let constant = if certified {
        LEGENDRE_BESSEL_CONSTANT
    } else {
        JACOBI_BESSEL_AUDIT_CONSTANT
    };
    Ok(AsymptoticApprox {
        value,
        error_bound: constant / n as f64,
        big_n,
        certified,
    })
}

/// Sum of `2F1(−m, m+1+2b; 1+b; s)·scale` minus its first term, in double-double.
/// Returns `(Σ_{k≥1} T_k, T_0)`.
fn hypergeometric_tail(m: usize, b: f64, s: f64, scale: f64) -> (Dd, f64) {
    let mf = m as f64;
    let mut term = Dd::from(scale);
    let mut sum = Dd::ZERO;
    for k in 0..m {
        let kf = k as f64;
        // (k − m)(k + m + 1 + 2b) is an exact integer for the parameters used here
        term = term
            .mul_f64((kf - mf) * (kf + mf + 1.0 + 2.0 * b))
            .div_f64((kf + 1.0) * (kf + 1.0 + b))
            .mul_f64(s);
        sum = sum.add(term);
        if term.hi.abs() < 1e-36 * scale.abs() && kf > 2.0 * mf * s.sqrt() {
            break;
        }
    }
    (sum, scale)
}

fn legendre_hypergeometric(n: usize, theta: f64) -> LegendreValues {
    let h = (0.5 * theta).sin();
    let s = h * h;
    let (tail, _) = hypergeometric_tail(n, 0.0, s, 1.0);
    let (tail11, first11) = hypergeometric_tail(n - 1, 1.0, s, n as f64);
    LegendreValues {
        p: Dd::from(1.0).add(tail).to_f64(),
        one_minus_p: -tail.to_f64(),
        p11: Dd::from(first11).add(tail11).to_f64(),
    }
}

/// `2Γ(n+1)/(√π Γ(n+3/2))`, cached for the most recent degree.
fn stieltjes_prefactor(n: usize) -> f64 {
    thread_local! {
        static LAST: std::cell::Cell<(usize, f64)> = const { std::cell::Cell::new((usize::MAX, 0.0)) };
    }
    LAST.with(|last| {
        let (m, k) = last.get();
        if m == n {
            return k;
        }
        let k = 2.0 / PI.sqrt() * ln_gamma_ratio(n as f64, 1.0, 1.5).exp();
        last.set((n, k));
        k
    })
}

/// Stieltjes' series for `P_n(cos θ)` and its derivative, `θ ∈ (0, π/2]`
/// given as `θ_hi + θ_lo`.
fn legendre_stieltjes(n: usize, theta_hi: f64, theta_lo: f64) -> LegendreValues {
    let nf = n as f64;
    let k = stieltjes_prefactor(n);
    let sin_t = theta_hi.sin();
    let cos_t = theta_hi.cos();
    let inv_two_sin = 0.5 / sin_t;
    let mut w = inv_two_sin.sqrt();
    let mut p = 0.0;
    let mut dp = 0.0;
    let mut last = f64::INFINITY;
    // φ_m = (n+m+1/2)θ − (2m+1)π/4 = φ_0 + m(θ − π/2), advanced by rotation
    let (mut cos_phi, mut sin_phi) = cos_sin_phase(nf + 0.5, theta_hi, theta_lo, 1);
    for m in 0..400 {
        let mf = m as f64;
        let a = nf + mf + 0.5;
        if w > last {
            break;
        }
        last = w;
        p += w * cos_phi;
        dp -= w * (a * sin_phi + (mf + 0.5) * cos_phi * cos_t / sin_t);
        if w < 1e-18 {
            break;
        }
        w *= (mf + 0.5) * (mf + 0.5) / ((mf + 1.0) * (nf + mf + 1.5)) * inv_two_sin;
        (cos_phi, sin_phi) = (cos_phi * sin_t + sin_phi * cos_t, sin_phi * sin_t - cos_phi * cos_t);
    }
    let p = k * p;
    let p11 = -2.0 / (nf + 1.0) / sin_t * k * dp;
    LegendreValues {
        p,
        one_minus_p: 1.0 - p,
        p11,
    }
}

/// Switch point `(n+1/2)θ` between the hypergeometric and Stieltjes paths.
const STIELTJES_START: f64 = 32.0;

/// `P_n(cos t)`, `1 − P_n(cos t)` and `P_{n−1}^{(1,1)}(cos t)` for `t ∈ [0, π]`.
///
/// Small degrees use the three-term recurrence. From [`LARGE_DEGREE`] on, the
/// evaluation is `O(1)` in `n`: a double-double hypergeometric series near the
/// endpoints and Stieltjes' expansion in between, with the phase reduced in
/// extended precision.
pub fn legendre_values(n: usize, t: f64) -> Result<LegendreValues> {
    if t.is_nan() || !(0.0..=PI).contains(&t) {
        return Err(domain("t", t, "[0, pi]"));
    }
    if n < LARGE_DEGREE {
        return Ok(legendre_values_recurrence(n, t));
    }
    Ok(legendre_values_fast(n, t))
}

/// The `O(1)` paths of [`legendre_values`].
fn legendre_values_fast(n: usize, t: f64) -> LegendreValues {
    if t == 0.0 {
        return LegendreValues {
            p: 1.0,
            one_minus_p: 0.0,
            p11: n as f64,
        };
    }
    let reflected = t > FRAC_PI_2;
    // π − t = (PI_HI − t) + PI_LO, the first difference being exact
    let (theta_hi, theta_lo) = if reflected {
        (PI - t, 1.224_646_799_147_353_2e-16)
    } else {
        (t, 0.0)
    };
    let big_n = n as f64 + 0.5;
    let v = if big_n * theta_hi < STIELTJES_START {
        legendre_hypergeometric(n, theta_hi + theta_lo)
    } else {
        legendre_stieltjes(n, theta_hi, theta_lo)
    };
    if !reflected {
        return v;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    LegendreValues {
        p: sign * v.p,
        one_minus_p: 1.0 - sign * v.p,
        p11: -sign * v.p11,
    }
}

#[cfg(test)]
#[allow(
    clippy::excessive_precision,
    clippy::inconsistent_digit_grouping,
    clippy::type_complexity
)]
mod tests {
    use super::*;
    use crate::specfun::{gegenbauer_eval, legendre_eval};
    use approx::assert_relative_eq;

    #[test]
    fn cosine_expansion_examples() {
        assert_eq!(cosine_expansion(1, 0.5).unwrap(), vec![(1, 1.0)]);
        let sum: f64 = cosine_expansion(2, 1.0).unwrap().iter().map(|p| p.1).sum();
        assert_relative_eq!(sum, 3.0, max_relative = 1e-15);
        let c = cosine_expansion(2, 0.5).unwrap();
        assert_eq!(c.last().unwrap().0, 0);
        assert_relative_eq!(c.last().unwrap().1, 0.25, max_relative = 1e-15);
        assert!(cosine_expansion(3, 0.0).is_err());
    }

    #[test]
    fn cosine_expansion_reconstructs_gegenbauer() {
        for &(n, lambda) in &[(0, 0.5), (5, 1.0), (12, 1.5), (30, 2.5), (7, -0.3)] {
            let terms = cosine_expansion(n, lambda).unwrap();
            if lambda > 0.0 {
                assert!(terms.iter().all(|p| p.1 > 0.0));
            }
            for i in 0..=100 {
                let t = PI * i as f64 / 100.0;
                let series: f64 = terms.iter().map(|&(f, c)| c * (f as f64 * t).cos()).sum();
                if lambda > 0.0 {
                    let direct = gegenbauer_eval(n, lambda, t.cos(), false).unwrap();
                    assert!((series - direct).abs() < 1e-10 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn legendre_bessel_constant_holds_at_example() {
        let a = jacobi_bessel_approx(10, 0.0, 0.5).unwrap();
        assert!(a.certified);
        assert_relative_eq!(a.error_bound, 0.01711, max_relative = 1e-15);
        assert_eq!(a.big_n, 10.5);
        let p = legendre_eval(10, 0.5f64.cos()).unwrap();
        assert!((p - a.value).abs() <= a.error_bound);
    }

    #[test]
    fn approx_tends_to_one_at_zero() {
        for &n in &[1usize, 7, 1000] {
            let a = jacobi_bessel_approx(n, 0.0, 0.0).unwrap();
            assert_relative_eq!(a.value, 1.0, max_relative = 1e-15);
            let a = jacobi_bessel_approx(n, 0.0, 1e-9).unwrap();
            assert_relative_eq!(a.value, 1.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn approx_rejects_endpoint_and_zero_degree() {
        assert!(jacobi_bessel_approx(5, 0.0, PI - 1e-6).is_err());
        assert!(jacobi_bessel_approx(0, 0.0, 0.5).is_err());
        assert!(!jacobi_bessel_approx(5, 0.0, 2.0).unwrap().certified);
    }

    #[test]
    fn large_degree_paths_match_recurrence() {
        for &n in &[200usize, 201, 333, 500] {
            for i in 0..=400 {
                let t = if i == 0 { 1e-7 } else { PI * (i as f64 / 400.0).powi(2) };
                let t = t.min(PI);
                let fast = legendre_values(n, t).unwrap();
                let slow = legendre_values_recurrence(n, t);
                // the recurrence, not the fast path, limits these comparisons
                assert!(
                    (fast.p - slow.p).abs() < 1e-16 * (n * n) as f64,
                    "n={n} t={t} fast={} slow={}",
                    fast.p,
                    slow.p
                );
                assert!((fast.one_minus_p - slow.one_minus_p).abs() < 1e-16 * (n * n) as f64);
                assert!(
                    (fast.p11 - slow.p11).abs() < 1e-14 * (n * n) as f64,
                    "n={n} t={t} fast11={} slow11={}",
                    fast.p11,
                    slow.p11
                );
            }
        }
    }

    #[test]
    fn large_degree_reference_values() {
        // (n, t, P_n(cos t), P_{n−1}^{(1,1)}(cos t)) from 40-digit arithmetic
        let table = [
            (
                2000,
                0.000_314_159_265_358_979_3,
                0.903_665_689_763_844_08,
                1902.866_456_800_740_9,
            ),
            (2000, 0.3, -0.025_520_513_604_523_197, 0.139_436_313_759_463_72),
            (5000, 1.2, 0.009_461_738_840_057_235_4, -0.014_719_745_950_939_581),
            (3333, 2.9, -0.026_855_469_470_946_640, 0.073_487_045_661_616_632),
            (100_000, 0.0002, 0.167_017_980_760_918_78, 668.491_584_850_053_31),
            (100_000, 0.7, 0.000_525_295_591_900_535_30, -0.009_622_052_637_776_567_6),
            (1_000_000, 2e-5, 0.167_023_996_006_668_92, 6683.472_759_110_791_9),
            (6_400_000, 1e-6, 0.243_310_695_642_148_50, -363_274.717_976_132_76),
        ];
        for (n, t, p, p11) in table {
            let v = legendre_values(n, t).unwrap();
            assert!((v.p - p).abs() < 2e-15, "n={n} t={t} p={} want {p}", v.p);
            assert!(
                (v.p11 - p11).abs() < 2e-15 * p11.abs().max(1.0) * (n as f64).sqrt(),
                "n={n} t={t} p11={} want {p11}",
                v.p11
            );
        }
    }

    #[test]
    fn fast_path_at_moderate_degree() {
        let table = [
            (200, 0.0001, 0.99989950252499243004, 199.98995066831096643),
            (200, 0.01, 0.22100861323390174173, 114.99532459896748575),
            (200, 0.05, -0.24699616989003283155, 1.4859605635423218198),
            (200, 0.1, 0.16361478114104964557, 1.4982196322361791171),
            (200, 0.16, 0.14005920472417852773, -0.19364416837016292906),
            (200, 0.5, 0.039250704202500527941, -0.29591254821487798858),
            (200, 1.0, 0.013589140607668252297, -0.14197756637471901096),
            (200, 1.5, -0.0032446136229488769699, -0.11265509790312203182),
            (200, 2.5, -0.042238019305496199545, -0.197346535600870956),
            (500, 0.0001, 0.99937384804018255337, 499.84345508996679393),
            (500, 0.01, -0.17595867478047524731, -65.56312124812691206),
            (500, 0.05, 0.099389792569909151302, -4.9094424223673711834),
            (500, 0.1, 0.060665062306954845987, -1.8929634220192618197),
            (500, 0.16, -0.065179822065340732722, -0.77153746476403176915),
            (500, 0.5, -0.014850835804654004932, -0.20565841841358619855),
            (500, 1.0, -0.038094919407081530736, -0.018507751362061470172),
            (500, 1.5, -0.022860544948033696206, 0.054945208653726887011),
            (500, 2.5, 0.045817549471734263279, 0.016853650573963001369),
        ];
        for (n, t, p, p11) in table {
            let v = legendre_values_fast(n, t);
            assert!((v.p - p).abs() < 3e-16, "n={n} t={t}");
            assert!((v.p11 - p11).abs() < 5e-15 * p11.abs(), "n={n} t={t}");
        }
    }

    #[test]
    fn large_degree_jacobi_reference_value() {
        // P_1999^{(1,1)}(cos t) at t = 1.9634954084936207e-5, 40-digit reference
        let v = legendre_values(2000, 0.000_019_634_954_084_936_207).unwrap();
        assert_relative_eq!(v.p11, 1999.614_300_801_494_5, max_relative = 2e-16);
    }

    #[test]
    fn large_degree_small_angle_is_relatively_accurate() {
        let n = 1_000_000usize;
        let t = 1e-9;
        let v = legendre_values(n, t).unwrap();
        // 1 − P_n(cos t) = n(n+1)s − n(n+1)(n−1)(n+2)s²/4 + ..., s = sin²(t/2)
        let s = (0.5 * t).sin().powi(2);
        let nn = (n as f64) * (n as f64 + 1.0);
        let expect = nn * s - nn * (nn - 2.0) * s * s / 4.0;
        assert_relative_eq!(v.one_minus_p, expect, max_relative = 1e-12);
    }

    #[test]
    fn rejects_out_of_range_angles() {
        assert!(legendre_values(10, -0.1).is_err());
        assert!(legendre_values(10, 4.0).is_err());
    }
}
