//! Minimal double-double arithmetic for cancellation-prone sums and for
//! reducing large phases modulo `π/2`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = (self.hi - p - e + self.lo) / b;
        let (hi, lo) = two_sum(q1, r);
        Dd { hi, lo }
    }
}

// π/4 split into three parts.
const P4_1: f64 = std::f64::consts::FRAC_PI_4;
const P4_2: f64 = 3.061_616_997_868_383e-17;
const P4_3: f64 = -7.486_924_524_295_849e-34;

/// `(cos φ, sin φ)` for `φ = a·(θ_hi + θ_lo) − j·π/4`, with the product formed
/// exactly so that the result stays accurate when `|φ|` is in the millions.
pub(crate) fn cos_sin_phase(a: f64, theta_hi: f64, theta_lo: f64, j: i64) -> (f64, f64) {
    let (ph, pl) = two_prod(a, theta_hi);
    let pl = pl + a * theta_lo;
    // choose u ≡ j (mod 2) with u·π/4 nearest the phase
    let y = (ph + pl) / P4_1;
    let u = j as f64 + 2.0 * ((y - j as f64) * 0.5).round();
    let (h, l) = two_prod(u, P4_1);
    let r = ((ph - h) - l) + pl - u * P4_2 - u * P4_3;
    let quadrant = ((u as i64 - j) / 2).rem_euclid(4);
    let (c, s) = (r.cos(), r.sin());
    match quadrant {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
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

    #[test]
    fn pi_quarter_parts_sum_to_pi_over_four() {
        // π/4 to ~34 digits: 0.7853981633974483096156608458198757
        let s = Dd::from(P4_1).add(Dd::from(P4_2)).add(Dd::from(P4_3));
        assert_eq!(s.hi, std::f64::consts::FRAC_PI_4);
        assert!((s.lo - 3.061_616_997_868_382_9e-17).abs() < 1e-30);
    }

    #[test]
    fn small_phases_match_libm() {
        for &(a, t, j) in &[(3.5, 0.3, 0), (10.5, 0.7, 1), (2.0, 1.1, 3), (0.5, 2.0, -2)] {
            let phi = a * t - j as f64 * std::f64::consts::FRAC_PI_4;
            let (c, s) = cos_sin_phase(a, t, 0.0, j);
            assert!((c - phi.cos()).abs() < 1e-15);
            assert!((s - phi.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn large_phase_matches_exact_argument() {
        // a·t below is exact in f64, so libm's correctly reduced cos is the oracle;
        // the split product must reproduce it even though θ carries a low part.
        let a = 10_000_000.5;
        let t = 0.25;
        let (c, s) = cos_sin_phase(a, t, 0.0, 0);
        let phi: f64 = 2_500_000.125;
        assert!((c - phi.cos()).abs() < 1e-15 && (s - phi.sin()).abs() < 1e-15);
        // low part shifts the phase by a·θ_lo
        // a·lo and phi + a·lo are both exact for lo = 2^-30
        let lo = 2f64.powi(-30);
        let (c, _) = cos_sin_phase(a, t, lo, 0);
        assert!((c - (phi + a * lo).cos()).abs() < 1e-15);
        // j = 6 subtracts 3π/2
        let (c, _) = cos_sin_phase(a, t, 0.0, 6);
        assert!((c + phi.sin()).abs() < 1e-14);
    }

    #[test]
    fn dd_division_and_product() {
        let x = Dd::from(1.0).div_f64(3.0).mul_f64(3.0);
        assert!((x.hi - 1.0).abs() <= f64::EPSILON && (x.to_f64() - 1.0).abs() < 1e-30);
    }
}
