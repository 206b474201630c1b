//! Jacobi, Gegenbauer and Legendre polynomials by forward recurrence.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, ln_gamma_ratio};
use crate::error::{domain, Error, Result};

/// Degree and parameters of a classical orthogonal polynomial.
///
/// `lambda` is the Gegenbauer parameter; for a Jacobi index built with
/// `alpha == beta` it equals `alpha + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyIndex {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

impl PolyIndex {
    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Self {
        Self {
            n,
            alpha,
            beta,
            lambda: alpha + 0.5,
        }
    }

    /// Gegenbauer index; the Jacobi parameters are `λ − 1/2`.
    pub fn gegenbauer(n: usize, lambda: f64) -> Self {
        Self {
            n,
            alpha: lambda - 0.5,
            beta: lambda - 0.5,
            lambda,
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 {
        return Err(domain("x", x, "[-1, 1]"));
    }
    Ok(())
}

fn negative_integer(v: f64) -> Option<usize> {
    if v < 0.0 && v.fract() == 0.0 {
        Some((-v) as usize)
    } else {
        None
    }
}

/// Generalized binomial coefficient `binom(r, k)` for real `r`.
pub fn binomial(r: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (r - i as f64) / (i + 1) as f64)
}

/// `P_n^{(α,β)}(x)` for `α, β > −1` by the three-term recurrence.
fn jacobi_recurrence(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
    let ab2 = a * a - b * b;
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        let c2 = (s + 1.0) * ab2;
        let c3 = s * (s + 1.0) * (s + 2.0);
        let c4 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        let p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Jacobi polynomial `P_n^{(α,β)}(x)`.
///
/// Negative integer parameters `α = −ℓ` with `ℓ ≤ n` are reduced by
/// `P_n^{(−ℓ,β)}(x) = binom(n+β, ℓ)/binom(n, ℓ) · ((x−1)/2)^ℓ · P_{n−ℓ}^{(ℓ,β)}(x)`,
/// and negative integer `β` through the reflection `x → −x`.
pub fn jacobi_eval(idx: PolyIndex, x: f64) -> Result<f64> {
    check_x(x)?;
    jacobi_unchecked(idx.n, idx.alpha, idx.beta, x)
}

fn jacobi_unchecked(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    if a > -1.0 && b > -1.0 {
        return Ok(jacobi_recurrence(n, a, b, x));
    }
    if a <= -1.0 {
        match negative_integer(a) {
            Some(l) if l <= n => {
                let factor = binomial(n as f64 + b, l) / binomial(n as f64, l);
                let inner = jacobi_unchecked(n - l, l as f64, b, x)?;
                return Ok(factor * (0.5 * (x - 1.0)).powi(l as i32) * inner);
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "Jacobi parameter alpha = {a} with degree {n}"
                )))
            }
        }
    }
    // b <= -1, a > -1
    match negative_integer(b) {
        Some(m) if m <= n => {
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(sign * jacobi_unchecked(n, b, a, -x)?)
        }
        _ => Err(Error::Unsupported(format!(
            "Jacobi parameter beta = {b} with degree {n}"
        ))),
    }
}

/// `C_n^λ(1) = (2λ)_n / n!`.
pub fn gegenbauer_at_one(n: usize, lambda: f64) -> f64 {
    if n <= 300 {
        (0..n).fold(1.0, |acc, k| acc * (k as f64 + 2.0 * lambda) / (k + 1) as f64)
    } else {
        (ln_gamma_ratio(n as f64, 2.0 * lambda, 1.0)).exp() / gamma(2.0 * lambda)
    }
}

/// Normalized Gegenbauer polynomial `R_n^λ(x) = C_n^λ(x)/C_n^λ(1)` without
/// argument checks.
pub(crate) fn normalized_gegenbauer(n: usize, lambda: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut r0 = 1.0;
    let mut r1 = x;
    for k in 1..n {
        let kf = k as f64;
        let r2 = (2.0 * (kf + lambda) * x * r1 - kf * r0) / (kf + 2.0 * lambda);
        r0 = r1;
        r1 = r2;
    }
    r1
}

/// Gegenbauer polynomial `C_n^λ(x)`, or `R_n^λ(x)` when `normalized`.
pub fn gegenbauer_eval(n: usize, lambda: f64, x: f64, normalized: bool) -> Result<f64> {
    check_x(x)?;
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(domain("lambda", lambda, "(0, inf)"));
    }
    let r = normalized_gegenbauer(n, lambda, x);
    Ok(if normalized {
        r
    } else {
        r * gegenbauer_at_one(n, lambda)
    })
}

/// Legendre polynomial `P_n(x)`.
pub fn legendre_eval(n: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(legendre_unchecked(n, x))
}

pub(crate) fn legendre_unchecked(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `P_n`, `1 − P_n` and `P_{n−1}^{(1,1)}` at `cos t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreValues {
    pub p: f64,
    pub one_minus_p: f64,
    pub p11: f64,
}

/// Joint recurrence for `P_n(cos t)`, `1 − P_n(cos t)` (free of cancellation
/// near `t = 0`) and `P_{n−1}^{(1,1)}(cos t) = 2P_n'(cos t)/(n+1)`.
pub(crate) fn legendre_values_recurrence(n: usize, t: f64) -> LegendreValues {
    let x = t.cos();
    let half = (0.5 * t).sin();
    let one_minus_x = 2.0 * half * half;
    if n == 0 {
        return LegendreValues {
            p: 1.0,
            one_minus_p: 0.0,
            p11: 0.0,
        };
    }
    // D_k = (1 − P_k)/(1 − x), so that P_k' = D_k − (1 − x)D_k' avoids the
    // drift of the plain recurrences near x = 1.
    let (mut p0, mut p1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    let (mut e0, mut e1) = (0.0, 0.0);
    let (mut dp0, mut dp1) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + 1.0;
        let p2 = (c * x * p1 - kf * p0) / (kf + 1.0);
        let d2 = (c * (1.0 + x * d1) - kf * d0) / (kf + 1.0);
        let e2 = (c * (d1 + x * e1) - kf * e0) / (kf + 1.0);
        let dp2 = dp0 + c * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        e0 = e1;
        e1 = e2;
        dp0 = dp1;
        dp1 = dp2;
    }
    let one_minus_p = one_minus_x * d1;
    let near_one = x > 0.5;
    let dp = if near_one { d1 - one_minus_x * e1 } else { dp1 };
    LegendreValues {
        p: if near_one { 1.0 - one_minus_p } else { p1 },
        one_minus_p,
        p11: 2.0 * dp / (n as f64 + 1.0),
    }
}
