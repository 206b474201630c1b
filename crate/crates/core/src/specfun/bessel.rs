//! Bessel functions of the first kind for real order `α > −1`.
//!
//! Power series for `z ≤ 12`, Miller's backward recurrence normalized by the
//! Neumann series `(z/2)^ν/Γ(ν+1) = Σ_k (ν+2k)Γ(ν+k)/(k!Γ(ν+1)) J_{ν+2k}(z)`
//! in the middle range, and Hankel's asymptotic expansion for large `z`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::gamma;
use crate::error::{domain, Result};

const SERIES_LIMIT: f64 = 12.0;

fn hankel_threshold(alpha: f64) -> f64 {
    30.0 + alpha * alpha
}

/// `Σ_v (−z²/4)^v / (v! Γ(v+α+1))`, so that `J_α(z) = (z/2)^α · S`.
fn series(alpha: f64, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0 / gamma(alpha + 1.0);
    let mut sum = term;
    for v in 0..200 {
        let vf = v as f64;
        term *= -q / ((vf + 1.0) * (vf + alpha + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// `J_α(z) · (z/2)^{−α} Γ(α+1)` by Miller's algorithm.
fn miller_ratio(alpha: f64, z: f64) -> f64 {
    let mut m = (1.2 * z + 40.0).ceil() as usize;
    if m % 2 == 1 {
        m += 1;
    }
    let mut y_next = 0.0;
    let mut y = 1e-30;
    // Accumulates Σ c'_k y_{2k}; c'_k known only from the bottom, so store the
    // even-index values and sum afterwards.
    let mut even = vec![0.0; m / 2 + 1];
    even[m / 2] = y;
    for k in (1..=m).rev() {
        let y_prev = 2.0 * (alpha + k as f64) / z * y - y_next;
        y_next = y;
        y = y_prev;
        if (k - 1) % 2 == 0 {
            even[(k - 1) / 2] = y;
        }
        if y.abs() > 1e200 {
            y *= 1e-200;
            y_next *= 1e-200;
            for e in even.iter_mut() {
                *e *= 1e-200;
            }
        }
    }
    let mut sum = even[0];
    let mut h = 1.0;
    for (k, &e) in even.iter().enumerate().skip(1) {
        if k > 1 {
            h *= (alpha + (k - 1) as f64) / k as f64;
        }
        sum += (alpha + 2.0 * k as f64) * h * e;
    }
    even[0] / sum
}

/// Hankel's expansion of `J_α(z)` for large `z`.
fn hankel(alpha: f64, z: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (8.0 * kf * z);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // a_k/z^k enters P with sign (−1)^{k/2} for even k, Q with (−1)^{(k−1)/2}
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if last < 1e-17 {
            break;
        }
    }
    let omega = z - alpha * FRAC_PI_2 - FRAC_PI_4;
    (2.0 / (PI * z)).sqrt() * (p * omega.cos() - q * omega.sin())
}

fn check(alpha: f64, z: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(domain("alpha", alpha, "(-1, inf)"));
    }
    if z.is_nan() || z < 0.0 {
        return Err(domain("z", z, "[0, inf)"));
    }
    Ok(())
}

/// `J_α(z)`, or `j_α(z) = z^{−α} J_α(z)` when `normalized`.
pub fn bessel(alpha: f64, z: f64, normalized: bool) -> Result<f64> {
    check(alpha, z)?;
    if z == 0.0 {
        if normalized {
            return Ok(1.0 / (2f64.powf(alpha) * gamma(alpha + 1.0)));
        }
        return if alpha == 0.0 {
            Ok(1.0)
        } else if alpha > 0.0 {
            Ok(0.0)
        } else {
            Err(domain("z", z, "(0, inf) for negative order"))
        };
    }
    if z <= SERIES_LIMIT {
        let s = series(alpha, z);
        return Ok(if normalized {
            s * 2f64.powf(-alpha)
        } else {
            s * (0.5 * z).powf(alpha)
        });
    }
    let j = if z >= hankel_threshold(alpha) {
        hankel(alpha, z)
    } else {
        miller_ratio(alpha, z) * (0.5 * z).powf(alpha) / gamma(alpha + 1.0)
    };
    Ok(if normalized { j * z.powf(-alpha) } else { j })
}

/// `J_α(z)`.
pub fn bessel_j(alpha: f64, z: f64) -> Result<f64> {
    bessel(alpha, z, false)
}

#[cfg(test)]
#[allow(
    clippy::excessive_precision,
    clippy::inconsistent_digit_grouping,
    clippy::type_complexity
)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn j_half(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * z.sin()
    }
    fn j_minus_half(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * z.cos()
    }
    fn j_three_halves(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * (z.sin() / z - z.cos())
    }
    fn j_five_halves(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * ((3.0 / (z * z) - 1.0) * z.sin() - 3.0 * z.cos() / z)
    }

    #[test]
    fn half_integer_closed_forms_on_0_100() {
        let cases: [(f64, fn(f64) -> f64); 4] = [
            (0.5, j_half),
            (-0.5, j_minus_half),
            (1.5, j_three_halves),
            (2.5, j_five_halves),
        ];
        for (alpha, closed) in cases {
            for i in 1..=4000 {
                let z = 0.025 * i as f64;
                let got = bessel_j(alpha, z).unwrap();
                assert!(
                    (got - closed(z)).abs() < 1e-12,
                    "alpha={alpha} z={z} got={got} want={}",
                    closed(z)
                );
            }
        }
    }

    #[test]
    fn integer_order_reference_values() {
        // Standard tabulated values.
        assert_relative_eq!(bessel_j(0.0, 1.0).unwrap(), 0.765_197_686_557_966_6, epsilon = 1e-15);
        assert_relative_eq!(bessel_j(0.0, 20.0).unwrap(), 0.167_024_664_340_583_1, epsilon = 1e-13);
        assert_relative_eq!(bessel_j(1.0, 50.0).unwrap(), -0.097_511_828_125_175_41, epsilon = 1e-13);
        assert_relative_eq!(bessel_j(0.0, 100.0).unwrap(), 0.019_985_850_304_223_12, epsilon = 1e-13);
    }

    #[test]
    fn paths_agree_at_their_boundaries() {
        for &alpha in &[0.0, 0.5, 1.0, 2.5] {
            let z = SERIES_LIMIT;
            let s = series(alpha, z) * (0.5 * z).powf(alpha);
            let m = miller_ratio(alpha, z) * (0.5 * z).powf(alpha) / gamma(alpha + 1.0);
            assert!((s - m).abs() < 1e-12);
            let z = hankel_threshold(alpha);
            let m = miller_ratio(alpha, z) * (0.5 * z).powf(alpha) / gamma(alpha + 1.0);
            assert!((hankel(alpha, z) - m).abs() < 1e-13);
        }
    }

    #[test]
    fn examples() {
        assert!(bessel(0.5, PI, false).unwrap().abs() < 1e-15);
        assert_eq!(bessel(0.0, 0.0, true).unwrap(), 1.0);
        let want = 1.0 / (2f64.powf(1.5) * gamma(2.5));
        assert_relative_eq!(bessel(1.5, 0.0, true).unwrap(), want, max_relative = 1e-15);
        assert!(bessel(-1.0, 1.0, false).is_err());
        assert!(bessel(0.0, -1.0, false).is_err());
    }

    #[test]
    fn normalized_is_continuous_at_zero() {
        let small = bessel(1.0, 1e-8, true).unwrap();
        assert_relative_eq!(small, bessel(1.0, 0.0, true).unwrap(), max_relative = 1e-12);
    }
}
