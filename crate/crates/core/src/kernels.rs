//! Isotropic kernel specifications and the transforms applied to them.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{
    integrate_adaptive_with, integrate_endpoint_singular_with, integrate_panels, integrate_with_panel_width,
    oscillation_panel_width, QuadOptions, QuadratureResult, SingularWeight,
};
use crate::specfun::gamma::beta;
use crate::specfun::gegenbauer_eval;

/// Continuity class used for kernels that are smooth on their support.
pub const SMOOTH: u32 = u32::MAX;

/// Sphere or Euclidean dimension `d` with `λ = (d−1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dimension {
    pub d: u32,
    pub lambda: f64,
}

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("d", 0.0, "d >= 1"));
        }
        Ok(Self {
            d,
            lambda: (d as f64 - 1.0) / 2.0,
        })
    }

    /// `λ` as an integer when `d` is odd and at least 3.
    pub fn integer_lambda(&self) -> Option<u32> {
        (self.d % 2 == 1 && self.d >= 3).then_some((self.d - 1) / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    Linear,
    /// Monotone piecewise cubic Hermite (Fritsch–Carlson).
    Cubic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelKind {
    /// `(θ − t)_+^δ`; `δ = 0` is the indicator of `[0, θ)`.
    TruncatedPower { theta: f64, delta: f64 },
    Tabulated {
        nodes: Vec<f64>,
        values: Vec<f64>,
        interpolation: Interpolation,
        #[serde(skip)]
        slopes: Vec<f64>,
    },
    /// `g(t) (sin t / t)^{d−1}`.
    SincPower { inner: Box<KernelSpec>, d: u32 },
    /// `g(t/θ)`.
    Scaled { inner: Box<KernelSpec>, theta: f64 },
    /// `cos t` on `[0, π]`.
    Cosine,
    /// `exp(−(t/scale)²)` cut off beyond `cutoff`.
    Gaussian { scale: f64, cutoff: f64 },
    /// `Σ c_n R_n^λ(cos t)` on `[0, π]`.
    Expansion { lambda: f64, coeffs: Vec<f64> },
}

/// An isotropic kernel `g(t)`, `t ≥ 0`, with its support and smoothness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelKind", into = "KernelKind")]
pub struct KernelSpec {
    pub kind: KernelKind,
    /// Smallest `s` with the kernel identically zero on `(s, ∞)`.
    pub support_end: f64,
    /// Number of continuous derivatives on `[0, ∞)`; `None` if discontinuous.
    pub continuity_class: Option<u32>,
}

impl From<KernelSpec> for KernelKind {
    fn from(k: KernelSpec) -> Self {
        k.kind
    }
}

impl TryFrom<KernelKind> for KernelSpec {
    type Error = Error;

    fn try_from(kind: KernelKind) -> Result<Self> {
        match kind {
            KernelKind::TruncatedPower { theta, delta } => KernelSpec::truncated_power(theta, delta),
            KernelKind::Tabulated {
                nodes,
                values,
                interpolation,
                ..
            } => KernelSpec::tabulated(nodes, values, interpolation),
            KernelKind::SincPower { inner, d } => sinc_power_transform(*inner, d),
            KernelKind::Scaled { inner, theta } => scale_kernel(*inner, theta),
            KernelKind::Cosine => Ok(KernelSpec::cosine()),
            KernelKind::Gaussian { scale, cutoff } => KernelSpec::gaussian(scale, cutoff),
            KernelKind::Expansion { lambda, coeffs } => KernelSpec::expansion(lambda, coeffs),
        }
    }
}

fn positive_finite(what: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(domain(what, v, "(0, inf)"));
    }
    Ok(())
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let del: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![del[0], del[0]];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if del[k - 1] * del[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end(h[0], h[1], del[0], del[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    d
}

impl KernelSpec {
    pub fn truncated_power(theta: f64, delta: f64) -> Result<Self> {
        positive_finite("theta", theta)?;
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(domain("delta", delta, "[0, inf)"));
        }
        let continuity_class = if delta == 0.0 {
            None
        } else {
            Some(delta.ceil() as u32 - 1)
        };
        Ok(Self {
            kind: KernelKind::TruncatedPower { theta, delta },
            support_end: theta,
            continuity_class,
        })
    }

    /// Indicator of `[0, θ)`.
    pub fn indicator(theta: f64) -> Result<Self> {
        Self::truncated_power(theta, 0.0)
    }

    pub fn tabulated(nodes: Vec<f64>, values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(Error::InvalidArgument(
                "tabulated kernel needs at least two nodes and one value per node".into(),
            ));
        }
        if nodes.iter().chain(values.iter()).any(|v| !v.is_finite()) || nodes[0] < 0.0 {
            return Err(Error::InvalidArgument(
                "tabulated nodes must be finite and nonnegative".into(),
            ));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "tabulated nodes must be strictly increasing".into(),
            ));
        }
        let last_nonzero = values.iter().rposition(|&v| v != 0.0);
        let (support_end, continuity_class) = match last_nonzero {
            None => (0.0, Some(SMOOTH)),
            Some(k) if k + 1 < values.len() => {
                let class = match interpolation {
                    Interpolation::Linear => 0,
                    Interpolation::Cubic => 1,
                };
                (nodes[k + 1], Some(class))
            }
            Some(_) => (*nodes.last().expect("nonempty"), None),
        };
        let slopes = match interpolation {
            Interpolation::Cubic => pchip_slopes(&nodes, &values),
            Interpolation::Linear => Vec::new(),
        };
        Ok(Self {
            kind: KernelKind::Tabulated {
                nodes,
                values,
                interpolation,
                slopes,
            },
            support_end,
            continuity_class,
        })
    }

    /// The zero kernel.
    pub fn zero() -> Self {
        Self::tabulated(vec![0.0, std::f64::consts::PI], vec![0.0, 0.0], Interpolation::Linear).expect("valid table")
    }

    pub fn cosine() -> Self {
        Self {
            kind: KernelKind::Cosine,
            support_end: std::f64::consts::PI,
            continuity_class: None,
        }
    }

    pub fn gaussian(scale: f64, cutoff: f64) -> Result<Self> {
        positive_finite("scale", scale)?;
        positive_finite("cutoff", cutoff)?;
        Ok(Self {
            kind: KernelKind::Gaussian { scale, cutoff },
            support_end: cutoff,
            continuity_class: None,
        })
    }

    pub fn expansion(lambda: f64, coeffs: Vec<f64>) -> Result<Self> {
        positive_finite("lambda", lambda)?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("expansion coefficients must be finite".into()));
        }
        Ok(Self {
            kind: KernelKind::Expansion { lambda, coeffs },
            support_end: std::f64::consts::PI,
            continuity_class: None,
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        kernel_eval(self, t)
    }

    /// Evaluation for `t` known to be valid; out-of-range table lookups give 0.
    pub fn value(&self, t: f64) -> f64 {
        kernel_eval(self, t).unwrap_or(0.0)
    }

    /// Whether the kernel is identically zero.
    pub fn is_zero(&self) -> bool {
        self.support_end == 0.0
            || matches!(&self.kind, KernelKind::Expansion { coeffs, .. } if coeffs.iter().all(|&c| c == 0.0))
    }
}

fn eval_table(nodes: &[f64], values: &[f64], interpolation: Interpolation, slopes: &[f64], t: f64) -> f64 {
    let k = match nodes.partition_point(|&x| x <= t) {
        0 => 0,
        p if p >= nodes.len() => nodes.len() - 2,
        p => p - 1,
    };
    let (x0, x1) = (nodes[k], nodes[k + 1]);
    let (y0, y1) = (values[k], values[k + 1]);
    let h = x1 - x0;
    let s = (t - x0) / h;
    match interpolation {
        Interpolation::Linear => y0 + s * (y1 - y0),
        Interpolation::Cubic => {
            let (d0, d1) = (slopes[k], slopes[k + 1]);
            let s2 = s * s;
            let s3 = s2 * s;
            (2.0 * s3 - 3.0 * s2 + 1.0) * y0
                + (s3 - 2.0 * s2 + s) * h * d0
                + (-2.0 * s3 + 3.0 * s2) * y1
                + (s3 - s2) * h * d1
        }
    }
}

/// `g(t)` for `t ≥ 0`; zero beyond the support.
pub fn kernel_eval(spec: &KernelSpec, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(domain("t", t, "[0, inf)"));
    }
    if t > spec.support_end {
        return Ok(0.0);
    }
    Ok(match &spec.kind {
        KernelKind::TruncatedPower { theta, delta } => {
            if t >= *theta {
                0.0
            } else if *delta == 0.0 {
                1.0
            } else {
                (theta - t).powf(*delta)
            }
        }
        KernelKind::Tabulated {
            nodes,
            values,
            interpolation,
            slopes,
        } => {
            let (lo, hi) = (nodes[0], nodes[nodes.len() - 1]);
            if t < lo {
                return Err(Error::Extrapolation { t, lo, hi });
            }
            eval_table(nodes, values, *interpolation, slopes, t)
        }
        KernelKind::SincPower { inner, d } => {
            let g = kernel_eval(inner, t)?;
            if t == 0.0 {
                g
            } else {
                g * (t.sin() / t).powi(*d as i32 - 1)
            }
        }
        KernelKind::Scaled { inner, theta } => kernel_eval(inner, t / theta)?,
        KernelKind::Cosine => t.cos(),
        KernelKind::Gaussian { scale, .. } => (-(t / scale).powi(2)).exp(),
        KernelKind::Expansion { lambda, coeffs } => {
            let x = t.cos().clamp(-1.0, 1.0);
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(|(n, &c)| c * crate::specfun::normalized_gegenbauer(n, *lambda, x))
                .sum()
        }
    })
}

/// Smooth factor of a kernel in power form.
type SmoothFactor<'a> = Box<dyn Fn(f64) -> f64 + Sync + 'a>;

impl KernelSpec {
    /// `(e, δ, s)` with `g(t) = (e − t)_+^δ s(t)` and `s` smooth on `[0, e]`.
    fn power_form(&self) -> Option<(f64, f64, SmoothFactor<'_>)> {
        match &self.kind {
            KernelKind::TruncatedPower { theta, delta } => Some((*theta, *delta, Box::new(|_| 1.0))),
            KernelKind::Scaled { inner, theta } => {
                let (e, delta, s) = inner.power_form()?;
                let th = *theta;
                let c = th.powf(-delta);
                Some((th * e, delta, Box::new(move |t| c * s(t / th))))
            }
            KernelKind::SincPower { inner, d } => {
                let (e, delta, s) = inner.power_form()?;
                let p = *d as i32 - 1;
                Some((
                    e,
                    delta,
                    Box::new(move |t: f64| if t == 0.0 { s(t) } else { s(t) * (t.sin() / t).powi(p) }),
                ))
            }
            _ => None,
        }
    }

    /// Points where the kernel or a derivative may jump.
    fn kinks(&self) -> Vec<f64> {
        match &self.kind {
            KernelKind::TruncatedPower { theta, .. } => vec![*theta],
            KernelKind::Tabulated { nodes, .. } => nodes.clone(),
            KernelKind::SincPower { inner, .. } => inner.kinks(),
            KernelKind::Scaled { inner, theta } => inner.kinks().into_iter().map(|x| x * theta).collect(),
            KernelKind::Gaussian { cutoff, .. } => vec![*cutoff],
            KernelKind::Cosine | KernelKind::Expansion { .. } => Vec::new(),
        }
    }
}

/// `∫_0^{min(upper, support)} g(t) h(t) dt` for `h` oscillating at frequency
/// up to `big_n`.
///
/// A truncated-power endpoint `(e − t)^δ` is handled as a singular weight;
/// other kernels are split at their kinks. Table kernels count as zero below
/// their first node.
pub fn integrate_against<H: Fn(f64) -> f64>(
    g: &KernelSpec,
    h: H,
    upper: f64,
    big_n: f64,
    opts: &QuadOptions,
) -> QuadratureResult {
    let b = upper.min(g.support_end);
    if g.is_zero() || !(b > 0.0) {
        return QuadratureResult::ZERO;
    }
    let width = oscillation_panel_width(big_n);
    if let Some((end, delta, s)) = g.power_form() {
        if end <= upper {
            let w = SingularWeight::right(delta).expect("delta >= 0");
            return integrate_endpoint_singular_with(|t| s(t) * h(t), 0.0, end, w, Some(width), opts);
        }
    }
    let mut cuts: Vec<f64> = g.kinks().into_iter().filter(|&x| x > 0.0 && x < b).collect();
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    let mut bps = vec![0.0];
    for &c in &cuts {
        let lo = bps[bps.len() - 1];
        if c <= lo {
            continue;
        }
        let m = ((c - lo) / width).ceil().max(1.0) as usize;
        for k in 1..m {
            bps.push(lo + (c - lo) * k as f64 / m as f64);
        }
        bps.push(c);
    }
    integrate_panels(|t| g.value(t) * h(t), &bps, opts)
}

/// `g(t/θ)` for `θ ∈ (0, 1]`; the support shrinks to `θ · support_end`.
pub fn scale_kernel(g: KernelSpec, theta: f64) -> Result<KernelSpec> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(domain("theta", theta, "(0, 1]"));
    }
    Ok(KernelSpec {
        support_end: theta * g.support_end,
        continuity_class: g.continuity_class,
        kind: KernelKind::Scaled {
            inner: Box::new(g),
            theta,
        },
    })
}

/// `g(t/θ)` for any `θ > 0`, without the `θ ≤ 1` restriction of
/// [`scale_kernel`]. Not round-trippable through serde when `θ > 1`.
pub(crate) fn dilate(g: &KernelSpec, theta: f64) -> KernelSpec {
    KernelSpec {
        support_end: theta * g.support_end,
        continuity_class: g.continuity_class,
        kind: KernelKind::Scaled {
            inner: Box::new(g.clone()),
            theta,
        },
    }
}

/// `g(t) (sin t / t)^{d−1}`; the identity for `d = 1`.
pub fn sinc_power_transform(g: KernelSpec, d: u32) -> Result<KernelSpec> {
    if d == 0 {
        return Err(domain("d", 0.0, "d >= 1"));
    }
    if d == 1 {
        return Ok(g);
    }
    Ok(KernelSpec {
        support_end: g.support_end,
        continuity_class: g.continuity_class,
        kind: KernelKind::SincPower { inner: Box::new(g), d },
    })
}

/// Both sides of the fractional-integral lift identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub converged: bool,
}

/// Checks `∫_0^θ (θ−u)^{δ1} h(u) du = B(δ2+1, δ1−δ2)^{−1} ∫_0^θ (θ−t)^{δ1−δ2−1}
/// ∫_0^t (t−u)^{δ2} h(u) du dt` with `h(u) = g(u) C_n^λ(cos u) sin^{2λ} u`.
#[allow(clippy::too_many_arguments)]
pub fn fractional_lift_check(
    g: &KernelSpec,
    delta1: f64,
    delta2: f64,
    theta: f64,
    n: usize,
    d: Dimension,
    opts: &QuadOptions,
) -> Result<LiftCheck> {
    let a = delta1 - delta2 - 1.0;
    if !(delta2 > -1.0 && a > -1.0) {
        return Err(Error::InvalidArgument(format!(
            "lift exponents need delta1 > delta2 > -1, got delta1 = {delta1}, delta2 = {delta2}"
        )));
    }
    positive_finite("theta", theta)?;
    if g.is_zero() {
        return Ok(LiftCheck {
            lhs: 0.0,
            rhs: 0.0,
            residual: 0.0,
            converged: true,
        });
    }
    let lambda = d.lambda;
    let h = |u: f64| -> f64 {
        let poly = if lambda == 0.0 {
            (n as f64 * u).cos()
        } else {
            gegenbauer_eval(n, lambda, u.cos().clamp(-1.0, 1.0), false).unwrap_or(f64::NAN)
        };
        g.value(u) * poly * u.sin().powf(2.0 * lambda)
    };
    let width = oscillation_panel_width(n as f64 + lambda);
    // h vanishes beyond the support end; cutting there keeps every kink at a
    // panel endpoint.
    let cut = g.support_end.min(theta);
    let lhs = if cut < theta {
        integrate_with_panel_width(|u| h(u) * (theta - u).powf(delta1), 0.0, cut, width, opts)
    } else {
        integrate_endpoint_singular_with(h, 0.0, theta, SingularWeight::right(delta1)?, Some(width), opts)
    };
    let inner_opts = QuadOptions {
        abs_tol: opts.abs_tol * 0.1,
        rel_tol: opts.rel_tol.max(1e-12),
        ..*opts
    };
    let inner_ok = std::cell::Cell::new(true);
    let inner = |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let r: QuadratureResult = if t > cut {
            integrate_with_panel_width(|u| h(u) * (t - u).powf(delta2), 0.0, cut, width, &inner_opts)
        } else {
            integrate_endpoint_singular_with(
                h,
                0.0,
                t,
                SingularWeight::right(delta2).expect("checked"),
                Some(width),
                &inner_opts,
            )
        };
        if !r.converged {
            inner_ok.set(false);
        }
        r.value
    };
    let weight = SingularWeight::right(a)?;
    let rhs = if cut < theta {
        let head = integrate_adaptive_with(|t| inner(t) * (theta - t).powf(a), 0.0, cut, opts);
        let tail = integrate_endpoint_singular_with(inner, cut, theta, weight, None, opts);
        head.combine(tail)
    } else {
        integrate_endpoint_singular_with(inner, 0.0, theta, weight, None, opts)
    };
    let inner_ok = inner_ok.get();
    let rhs_value = rhs.value / beta(delta2 + 1.0, a + 1.0);
    Ok(LiftCheck {
        lhs: lhs.value,
        rhs: rhs_value,
        residual: (lhs.value - rhs_value).abs(),
        converged: lhs.converged && rhs.converged && inner_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn truncated_power_examples() {
        let k = KernelSpec::truncated_power(1.0, 1.5).unwrap();
        assert_eq!(kernel_eval(&k, 1.0).unwrap(), 0.0);
        assert_eq!(kernel_eval(&k, 0.0).unwrap(), 1.0);
        assert_eq!(k.continuity_class, Some(1));
        assert_eq!(KernelSpec::indicator(1.0).unwrap().continuity_class, None);
        assert_eq!(kernel_eval(&KernelSpec::indicator(1.0).unwrap(), 0.999).unwrap(), 1.0);
        assert!(kernel_eval(&k, -0.1).is_err());
        assert!(KernelSpec::truncated_power(0.0, 1.0).is_err());
    }

    #[test]
    fn sinc_power_examples() {
        let g = KernelSpec::truncated_power(PI, 2.0).unwrap();
        let s = sinc_power_transform(g.clone(), 3).unwrap();
        let want = g.value(FRAC_PI_2) * (2.0 / PI).powi(2);
        assert_relative_eq!(s.value(FRAC_PI_2), want, max_relative = 1e-15);
        assert_eq!(s.value(PI), 0.0);
        assert_eq!(sinc_power_transform(g.clone(), 1).unwrap(), g);
    }

    #[test]
    fn scaling_examples() {
        let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
        let s = scale_kernel(g, 0.5).unwrap();
        assert_relative_eq!(s.value(0.3), 0.16, max_relative = 1e-14);
        assert_eq!(s.support_end, 0.5);
        assert!(scale_kernel(KernelSpec::cosine(), 1.5).is_err());
    }

    #[test]
    fn tabulated_linear_and_cubic() {
        let nodes = vec![0.0, 0.5, 1.0, 1.5];
        let values = vec![1.0, 0.5, 0.2, 0.0];
        let lin = KernelSpec::tabulated(nodes.clone(), values.clone(), Interpolation::Linear).unwrap();
        assert_relative_eq!(lin.value(0.25), 0.75);
        assert_eq!(lin.support_end, 1.5);
        let cub = KernelSpec::tabulated(nodes, values, Interpolation::Cubic).unwrap();
        for &(t, v) in &[(0.0, 1.0), (0.5, 0.5), (1.0, 0.2), (1.5, 0.0)] {
            assert_relative_eq!(cub.value(t), v, epsilon = 1e-15);
        }
        // monotone data stays monotone
        let mut prev = f64::INFINITY;
        for i in 0..=150 {
            let v = cub.value(i as f64 * 0.01);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
        assert_eq!(cub.value(2.0), 0.0);
    }

    #[test]
    fn tabulated_extrapolation_below_range_is_an_error() {
        let k = KernelSpec::tabulated(vec![0.5, 1.0], vec![1.0, 2.0], Interpolation::Linear).unwrap();
        assert!(matches!(kernel_eval(&k, 0.1), Err(Error::Extrapolation { .. })));
        assert_eq!(k.continuity_class, None);
        assert_eq!(kernel_eval(&k, 1.2).unwrap(), 0.0);
    }

    #[test]
    fn zero_kernel() {
        let z = KernelSpec::zero();
        assert!(z.is_zero());
        assert_eq!(z.value(1.0), 0.0);
    }

    #[test]
    fn serde_round_trip_rebuilds_derived_fields() {
        let k = scale_kernel(
            KernelSpec::tabulated(vec![0.0, 0.5, 1.0], vec![1.0, 0.3, 0.0], Interpolation::Cubic).unwrap(),
            0.5,
        )
        .unwrap();
        let json = serde_json::to_string(&k).unwrap();
        let back: KernelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn lift_identity_boundary_case() {
        let opts = QuadOptions {
            abs_tol: 1e-13,
            ..QuadOptions::default()
        };
        let g = KernelSpec::truncated_power(10.0, 0.0).unwrap();
        let r = fractional_lift_check(&g, 3.0, 1.5, 1.0, 0, Dimension::new(2).unwrap(), &opts).unwrap();
        assert!(r.residual <= 1e-8 * r.lhs.abs(), "{r:?}");
        let r = fractional_lift_check(&g, 2.5, 1.5, 0.8, 2, Dimension::new(3).unwrap(), &opts).unwrap();
        assert!(r.residual <= 1e-8 * r.lhs.abs(), "{r:?}");
        let r =
            fractional_lift_check(&KernelSpec::zero(), 3.0, 1.5, 1.0, 0, Dimension::new(2).unwrap(), &opts).unwrap();
        assert_eq!(r.residual, 0.0);
    }
}
