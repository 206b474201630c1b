//! Gamma-function helpers.
//!
//! Ratios `Γ(x+a)/Γ(x+b)` are formed in log space. For large `x` the
//! difference of log-gammas loses absolute accuracy (both terms are huge),
//! so it is replaced by the Bernoulli-polynomial expansion of
//! `ln Γ(z+a) − ln Γ(z+b)`; moderate `x` is shifted up into that range by the
//! functional equation.

use std::f64::consts::PI;

pub use statrs::function::beta::beta;
pub use statrs::function::gamma::ln_gamma;

/// `Γ(x)`, exact to rounding at positive integers and half-integers.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 && x <= 171.0 {
        if x.fract() == 0.0 {
            return (1..x as usize).fold(1.0, |acc, k| acc * k as f64);
        }
        if x.fract() == 0.5 {
            return (0..x as usize).fold(PI.sqrt(), |acc, k| acc * (k as f64 + 0.5));
        }
    }
    statrs::function::gamma::gamma(x)
}

const BERNOULLI: [f64; 17] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
];

fn binomial(m: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn bernoulli_poly(m: usize, x: f64) -> f64 {
    (0..=m)
        .map(|j| binomial(m, j) * BERNOULLI[j] * x.powi((m - j) as i32))
        .sum()
}

/// Threshold above which the asymptotic expansion is used directly.
fn asymptotic_start(a: f64, b: f64) -> f64 {
    40.0_f64.max(8.0 * a.abs().max(b.abs()))
}

fn ln_gamma_ratio_asymptotic(z: f64, a: f64, b: f64) -> f64 {
    let mut sum = (a - b) * z.ln();
    let mut zk = 1.0;
    for k in 1..16 {
        zk *= z;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let diff = bernoulli_poly(k + 1, a) - bernoulli_poly(k + 1, b);
        sum += sign * diff / ((k * (k + 1)) as f64 * zk);
    }
    sum
}

/// `ln(Γ(x+a) / Γ(x+b))`, requiring `x + a > 0` and `x + b > 0`.
pub fn ln_gamma_ratio(x: f64, a: f64, b: f64) -> f64 {
    debug_assert!(x + a > 0.0 && x + b > 0.0);
    if a == b {
        return 0.0;
    }
    let start = asymptotic_start(a, b);
    if x >= start {
        return ln_gamma_ratio_asymptotic(x, a, b);
    }
    let shift = (start - x).ceil() as usize;
    // Γ(x+a) = Γ(x+a+m) / Π (x+a+i)
    let mut correction = 0.0;
    for i in 0..shift {
        let i = i as f64;
        correction += ((x + b + i) / (x + a + i)).ln();
    }
    ln_gamma_ratio_asymptotic(x + shift as f64, a, b) + correction
}

/// `Γ(x+a) / Γ(x+b)`.
pub fn gamma_ratio(x: f64, a: f64, b: f64) -> f64 {
    ln_gamma_ratio(x, a, b).exp()
}

/// Pochhammer symbol `(a)_n = Γ(a+n)/Γ(a)` for `a > 0`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    if n <= 64 {
        (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
    } else {
        ln_gamma_ratio(a, n as f64, 0.0).exp()
    }
}
