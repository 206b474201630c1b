//! Positivity criteria: Schoenberg coefficients on spheres, the radial Fourier
//! transform on `ℝ^d`, and sampled Gram matrices.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernels::{integrate_against, scale_kernel, Dimension, KernelSpec};
use crate::quadrature::{QuadOptions, QuadratureResult};
use crate::specfun::gamma::{gamma, ln_gamma};
use crate::specfun::{bessel, gegenbauer_at_one, normalized_gegenbauer};

/// Gegenbauer coefficients `a_n = ∫_0^π g(t) C_n^λ(cos t) sin^{2λ} t dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerSeries {
    pub d: Dimension,
    pub coefficients: Vec<f64>,
    pub per_coeff_error: Vec<f64>,
    pub converged: Vec<bool>,
    /// `Σ a_n C_n^λ(1) / h_n`, the truncated expansion evaluated at `t = 0`.
    pub weighted_partial_sum: f64,
}

impl GegenbauerSeries {
    pub fn nmax(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// CSV with columns `n,a_n,error`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_n,error\n");
        for (n, (a, e)) in self.coefficients.iter().zip(&self.per_coeff_error).enumerate() {
            out.push_str(&format!("{n},{a:e},{e:e}\n"));
        }
        out
    }
}

/// `C_n^λ(1) / h_n` with `h_n = ∫_0^π (C_n^λ(cos t))² sin^{2λ} t dt`; for
/// `λ = 0` the basis is `cos(nt)`.
pub fn expansion_weight(n: usize, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 / PI } else { 2.0 / PI };
    }
    let ln_c = 2.0 * ln_gamma(lambda) + (2.0 * lambda - 1.0) * 2f64.ln() - PI.ln() - ln_gamma(2.0 * lambda);
    (n as f64 + lambda) * ln_c.exp()
}

pub fn gegenbauer_coefficients(g: &KernelSpec, d: Dimension, nmax: usize, tol: f64) -> Result<GegenbauerSeries> {
    gegenbauer_coefficients_with(g, d, nmax, &QuadOptions::with_tol(tol))
}

/// As [`gegenbauer_coefficients`] with explicit quadrature options; `abs_tol`
/// applies to each coefficient.
pub fn gegenbauer_coefficients_with(
    g: &KernelSpec,
    d: Dimension,
    nmax: usize,
    opts: &QuadOptions,
) -> Result<GegenbauerSeries> {
    let (tol, opts) = (opts.abs_tol, *opts);
    if g.support_end > PI * (1.0 + 1e-15) {
        return Err(Error::InvalidArgument(format!(
            "sphere kernels need support in [0, pi], got support end {}",
            g.support_end
        )));
    }
    let lambda = d.lambda;
    let results: Vec<QuadratureResult> = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let at_one = if lambda == 0.0 {
                1.0
            } else {
                gegenbauer_at_one(n, lambda)
            };
            let h = |t: f64| {
                let p = if lambda == 0.0 {
                    (n as f64 * t).cos()
                } else {
                    normalized_gegenbauer(n, lambda, t.cos().clamp(-1.0, 1.0))
                };
                p * t.sin().powf(2.0 * lambda)
            };
            // integrate the normalized polynomial, then rescale
            let inner = QuadOptions {
                abs_tol: tol / at_one,
                ..opts
            };
            integrate_against(g, h, PI, n as f64 + lambda, &inner).scale(at_one)
        })
        .collect();
    let coefficients: Vec<f64> = results.iter().map(|r| r.value).collect();
    let weighted_partial_sum = coefficients
        .iter()
        .enumerate()
        .map(|(n, a)| a * expansion_weight(n, lambda))
        .sum();
    Ok(GegenbauerSeries {
        d,
        per_coeff_error: results.iter().map(|r| r.abs_error_est).collect(),
        converged: results.iter().map(|r| r.converged).collect(),
        coefficients,
        weighted_partial_sum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdStatus {
    #[serde(rename = "PD")]
    Pd,
    #[serde(rename = "PSD")]
    Psd,
    #[serde(rename = "NotPD")]
    NotPd,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Coefficient {
        n: usize,
        value: f64,
    },
    Frequency {
        xi: f64,
        value: f64,
    },
    Gram {
        points: Vec<Vec<f64>>,
        eigenvalue: f64,
        eigenvector: Vec<f64>,
    },
}

/// Sign statistics of the sampled values (coefficients, transform values or
/// eigenvalues).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Margins {
    pub count: usize,
    pub min_value: f64,
    pub max_value: f64,
    pub negative: usize,
    pub positive: usize,
    pub positive_even: usize,
    pub positive_odd: usize,
}

impl Margins {
    fn from_values(values: &[f64], tol: f64) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let mut m = Margins {
            count: values.len(),
            min_value: f64::INFINITY,
            max_value: f64::NEG_INFINITY,
            ..Self::default()
        };
        for (n, &v) in values.iter().enumerate() {
            m.min_value = m.min_value.min(v);
            m.max_value = m.max_value.max(v);
            if v < -tol {
                m.negative += 1;
            }
            if v > tol {
                m.positive += 1;
                if n % 2 == 0 {
                    m.positive_even += 1;
                } else {
                    m.positive_odd += 1;
                }
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdVerdict {
    pub status: PdStatus,
    pub witness: Option<Witness>,
    /// Truncation degree for coefficient-based verdicts.
    pub nmax: Option<usize>,
    pub tol: f64,
    pub margins: Margins,
    /// The verdict rests on finitely many samples (grid or random points).
    pub sampled: bool,
}

impl PdVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    /// Not contradicted by the evidence: PD or PSD.
    pub fn is_psd(&self) -> bool {
        matches!(self.status, PdStatus::Pd | PdStatus::Psd)
    }
}

/// Default sign tolerance `1e−10 · max(|a_0|, g(0))`.
pub fn default_tol(series: &GegenbauerSeries, g0: f64) -> f64 {
    let a0 = series.coefficients.first().copied().unwrap_or(0.0).abs();
    let scale = a0.max(g0.abs());
    if scale > 0.0 {
        1e-10 * scale
    } else {
        1e-14
    }
}

/// Schoenberg's criterion at finite truncation.
///
/// PD additionally requires a coefficient above `tol` at some even and some
/// odd index, the finite stand-in for the infinitely-many condition.
pub fn schoenberg_test(series: &GegenbauerSeries, tol: f64) -> PdVerdict {
    let a = &series.coefficients;
    let err = &series.per_coeff_error;
    let mut witness = None;
    let mut doubtful = false;
    for n in 0..a.len() {
        if a[n] + err[n] < -tol {
            if witness.is_none() {
                witness = Some(Witness::Coefficient { n, value: a[n] });
            }
        } else if a[n] < -tol || !series.converged[n] || err[n] > tol {
            doubtful = true;
        }
    }
    let margins = Margins::from_values(a, tol);
    let strictly = |parity: usize| (0..a.len()).any(|n| n % 2 == parity && a[n] - err[n] > tol);
    let status = if witness.is_some() {
        PdStatus::NotPd
    } else if doubtful {
        PdStatus::Inconclusive
    } else if strictly(0) && strictly(1) {
        PdStatus::Pd
    } else {
        PdStatus::Psd
    };
    PdVerdict {
        status,
        witness,
        nmax: Some(series.nmax()),
        tol,
        margins,
        sampled: false,
    }
}

/// `j_α(z) = z^{−α} J_α(z)`.
fn j_alpha(alpha: f64, z: f64) -> f64 {
    if alpha == -0.5 {
        (2.0 / PI).sqrt() * z.cos()
    } else {
        bessel(alpha, z, true).unwrap_or(f64::NAN)
    }
}

/// Radial Fourier transform `(2π)^{d/2} ∫_0^∞ g(u) j_{(d−2)/2}(ξu) u^{d−1} du`.
pub fn hankel_transform(g: &KernelSpec, d: Dimension, xi: f64) -> Result<f64> {
    Ok(hankel_transform_with(g, d, xi, &QuadOptions::with_tol(1e-13))?.value)
}

pub fn hankel_transform_with(g: &KernelSpec, d: Dimension, xi: f64, opts: &QuadOptions) -> Result<QuadratureResult> {
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(domain("xi", xi, "[0, inf)"));
    }
    if !g.support_end.is_finite() {
        return Err(Error::InvalidArgument("hankel transform needs compact support".into()));
    }
    let alpha = (d.d as f64 - 2.0) / 2.0;
    let p = d.d as i32 - 1;
    let c = (2.0 * PI).powf(d.d as f64 / 2.0);
    let f = |u: f64| j_alpha(alpha, xi * u) * u.powi(p);
    let r = integrate_against(g, f, f64::INFINITY, xi, &opts.scaled_abs(1.0 / c));
    if !r.value.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "hankel transform is not finite at xi = {xi}"
        )));
    }
    Ok(r.scale(c))
}

/// Bochner's criterion sampled on a frequency grid.
pub fn bochner_test(g: &KernelSpec, d: Dimension, xi_grid: &[f64], tol: f64) -> Result<PdVerdict> {
    bochner_test_with(g, d, xi_grid, tol, &QuadOptions::with_tol((tol * 1e-2).max(1e-15)))
}

/// As [`bochner_test`] with explicit quadrature options for the transforms.
pub fn bochner_test_with(
    g: &KernelSpec,
    d: Dimension,
    xi_grid: &[f64],
    tol: f64,
    opts: &QuadOptions,
) -> Result<PdVerdict> {
    if xi_grid.windows(2).any(|w| w[1] < w[0]) || xi_grid.iter().any(|&x| !(x >= 0.0)) {
        return Err(Error::InvalidArgument(
            "frequency grid must be nonnegative and sorted".into(),
        ));
    }
    let values: Vec<QuadratureResult> = xi_grid
        .par_iter()
        .map(|&xi| hankel_transform_with(g, d, xi, opts))
        .collect::<Result<_>>()?;
    let vals: Vec<f64> = values.iter().map(|r| r.value).collect();
    let witness = xi_grid
        .iter()
        .zip(&values)
        .find(|(_, r)| r.value + r.abs_error_est < -tol)
        .map(|(&xi, r)| Witness::Frequency { xi, value: r.value });
    let mut margins = Margins::from_values(&vals, tol);
    margins.positive_even = 0;
    margins.positive_odd = 0;
    let status = if witness.is_some() {
        PdStatus::NotPd
    } else if values.iter().any(|r| !r.converged) {
        PdStatus::Inconclusive
    } else if !vals.is_empty() && vals.iter().all(|&v| v > tol) {
        PdStatus::Pd
    } else {
        PdStatus::Psd
    };
    Ok(PdVerdict {
        status,
        witness,
        nmax: None,
        tol,
        margins,
        sampled: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "d")]
pub enum Space {
    Sphere(u32),
    Euclidean(u32),
}

/// Points with the metric of their space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub space: Space,
    pub points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(space: Space, points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match space {
            Space::Sphere(d) => d as usize + 1,
            Space::Euclidean(d) => d as usize,
        };
        for p in &points {
            if p.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "point has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if let Space::Sphere(_) = space {
                let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(domain("point norm", norm, "1 +- 1e-12"));
                }
            }
        }
        Ok(Self { space, points })
    }

    /// Random points: normalized Gaussian vectors on spheres, Gaussian
    /// vectors with standard deviation `scale` in `ℝ^d`.
    pub fn random<R: Rng>(space: Space, count: usize, scale: f64, rng: &mut R) -> Self {
        let (dim, sphere) = match space {
            Space::Sphere(d) => (d as usize + 1, true),
            Space::Euclidean(d) => (d as usize, false),
        };
        let points = (0..count)
            .map(|_| loop {
                let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                if sphere {
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        break v.iter().map(|x| x / norm).collect();
                    }
                } else {
                    break v.iter().map(|x| x * scale).collect();
                }
            })
            .collect();
        Self { space, points }
    }

    /// Geodesic distance on spheres, Euclidean distance otherwise.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (x, y) = (&self.points[i], &self.points[j]);
        let diff = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        match self.space {
            Space::Euclidean(_) => diff,
            Space::Sphere(_) => {
                let sum = x.iter().zip(y).map(|(a, b)| (a + b).powi(2)).sum::<f64>().sqrt();
                2.0 * diff.atan2(sum)
            }
        }
    }

    pub fn gram(&self, g: &KernelSpec) -> DMatrix<f64> {
        let n = self.points.len();
        DMatrix::from_fn(n, n, |i, j| g.value(self.distance(i, j)))
    }
}

/// Smallest eigenvalue of `g[X]` and its eigenvector.
pub fn gram_min_eigen(g: &KernelSpec, points: &PointSet) -> (f64, Vec<f64>) {
    let m = points.gram(g);
    if m.nrows() == 0 {
        return (0.0, Vec::new());
    }
    let eig = SymmetricEigen::new(m);
    let (k, &v) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (v, eig.eigenvectors.column(k).iter().copied().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub min_eigenvalue: f64,
    pub per_trial: Vec<f64>,
    pub verdict: PdVerdict,
}

/// Minimum Gram eigenvalue over random point sets.
///
/// A negative eigenvalue below `−tol · ‖g[X]‖` is a NotPD witness; `‖·‖` is
/// the spectral norm.
pub fn gram_oracle(
    g: &KernelSpec,
    space: Space,
    n_points: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<GramReport> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("n_points must be at least 1".into()));
    }
    let scale = if g.support_end.is_finite() && g.support_end > 0.0 {
        g.support_end / 2.0
    } else {
        1.0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets: Vec<PointSet> = (0..trials)
        .map(|_| PointSet::random(space, n_points, scale, &mut rng))
        .collect();
    let results: Vec<(f64, f64, Vec<f64>)> = sets
        .par_iter()
        .map(|ps| {
            let eig = SymmetricEigen::new(ps.gram(g));
            let (k, &min) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty");
            let norm = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            (min, norm, eig.eigenvectors.column(k).iter().copied().collect())
        })
        .collect();
    let per_trial: Vec<f64> = results.iter().map(|r| r.0).collect();
    let min_eigenvalue = per_trial.iter().copied().fold(f64::INFINITY, f64::min);
    let witness = results
        .iter()
        .zip(&sets)
        .filter(|((min, norm, _), _)| *min < -tol * norm)
        .min_by(|a, b| a.0 .0.total_cmp(&b.0 .0))
        .map(|((min, _, vec), ps)| Witness::Gram {
            points: ps.points.clone(),
            eigenvalue: *min,
            eigenvector: vec.clone(),
        });
    let all_pos = results.iter().all(|(min, norm, _)| *min > tol * norm);
    let status = if witness.is_some() {
        PdStatus::NotPd
    } else if all_pos && trials > 0 {
        PdStatus::Pd
    } else {
        PdStatus::Psd
    };
    Ok(GramReport {
        min_eigenvalue,
        verdict: PdVerdict {
            status,
            witness,
            nmax: None,
            tol,
            margins: Margins::from_values(&per_trial, 0.0),
            sampled: true,
        },
        per_trial,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InheritanceReport {
    pub d: u32,
    pub euclidean: PdVerdict,
    pub sphere: PdVerdict,
    /// Set when the Euclidean verdict is PSD or PD and the sphere verdict is
    /// NotPD, contradicting the expected inheritance.
    pub contradiction: bool,
}

/// Cross-tabulates Bochner (on `xi_grid`) and Schoenberg (to `nmax`) verdicts
/// for odd `d ≥ 3`.
pub fn inheritance_check(g: &KernelSpec, d: u32, nmax: usize, xi_grid: &[f64]) -> Result<InheritanceReport> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(domain("d", d as f64, "odd d >= 3"));
    }
    let dim = Dimension::new(d)?;
    let g0 = g.value(0.0);
    let series = gegenbauer_coefficients(g, dim, nmax, 1e-13 * g0.abs().max(1.0))?;
    let tol = default_tol(&series, g0);
    let sphere = schoenberg_test(&series, tol);
    let euclidean = bochner_test(g, dim, xi_grid, tol)?;
    let contradiction = euclidean.is_psd() && sphere.status == PdStatus::NotPd;
    Ok(InheritanceReport {
        d,
        euclidean,
        sphere,
        contradiction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverseRow {
    pub n: usize,
    pub theta: f64,
    pub s_n: f64,
    pub gap: f64,
    pub abs_error_est: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConverseTable {
    pub d: u32,
    pub x: f64,
    pub target: f64,
    pub rows: Vec<ConverseRow>,
    /// Gaps strictly decrease along `rows`.
    pub monotone: bool,
    /// Only the sampled scales `θ_n = x/n` are examined, not every `θ ∈ (0, 1)`.
    pub note: String,
}

impl ConverseTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,theta,s_n,target,gap\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:e},{:e},{:e},{:e}\n",
                r.n, r.theta, r.s_n, self.target, r.gap
            ));
        }
        out
    }
}

/// `c_λ = 2^α Γ(α+1) / (2π)^{d/2}`, `α = λ − 1/2`, so that the scaled sphere
/// integrals tend to `c_λ x^{2λ+1} ĝ(x)`.
pub fn converse_constant(d: Dimension) -> f64 {
    let alpha = d.lambda - 0.5;
    2f64.powf(alpha) * gamma(alpha + 1.0) / (2.0 * PI).powf(d.d as f64 / 2.0)
}

/// `S_n = n^{2λ+1} ∫_0^{θπ} g(t/θ) R_n^λ(cos t) sin^{2λ} t dt` at `θ = x/n`
/// against its limit `c_λ x^{2λ+1} ĝ(x)`.
pub fn converse_check(g: &KernelSpec, d: Dimension, x: f64, n_list: &[usize]) -> Result<ConverseTable> {
    if d.d < 2 {
        return Err(domain("d", d.d as f64, "d >= 2"));
    }
    if g.support_end > PI * (1.0 + 1e-15) {
        return Err(Error::InvalidArgument("converse check needs support in [0, pi]".into()));
    }
    if !(x > 0.0) {
        return Err(domain("x", x, "(0, inf)"));
    }
    let lambda = d.lambda;
    let p = 2.0 * lambda + 1.0;
    let target = converse_constant(d) * x.powf(p) * hankel_transform(g, d, x)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let theta = x / n as f64;
        if !(theta > 0.0 && theta < 1.0) {
            return Err(domain("x/n", theta, "(0, 1)"));
        }
        if g.is_zero() {
            rows.push(ConverseRow {
                n,
                theta,
                s_n: 0.0,
                gap: target.abs(),
                abs_error_est: 0.0,
            });
            continue;
        }
        let scaled = scale_kernel(g.clone(), theta)?;
        let scale = (n as f64).powf(p);
        let h = |t: f64| normalized_gegenbauer(n, lambda, t.cos()) * t.sin().powf(2.0 * lambda);
        let opts = QuadOptions::with_tol(1e-12 / scale);
        let r = integrate_against(&scaled, h, PI, n as f64 + lambda, &opts).scale(scale);
        rows.push(ConverseRow {
            n,
            theta,
            s_n: r.value,
            gap: (r.value - target).abs(),
            abs_error_est: r.abs_error_est,
        });
    }
    let monotone = rows.windows(2).all(|w| w[1].gap < w[0].gap);
    Ok(ConverseTable {
        d: d.d,
        x,
        target,
        rows,
        monotone,
        note: "samples theta_n = x/n only; the hypothesis concerns every theta in (0, 1)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn cosine_coefficients_on_s2() {
        let s = gegenbauer_coefficients(&KernelSpec::cosine(), dim(2), 5, 1e-12).unwrap();
        for (n, &a) in s.coefficients.iter().enumerate() {
            let want = if n == 1 { 2.0 / 3.0 } else { 0.0 };
            assert!((a - want).abs() < 1e-10, "a_{n} = {a}");
        }
        assert_relative_eq!(s.weighted_partial_sum, 1.0, max_relative = 1e-10);
        let v = schoenberg_test(&s, 1e-10);
        assert_eq!(v.status, PdStatus::Psd);
    }

    #[test]
    fn gegenbauer_kernel_on_s3() {
        let g = KernelSpec::expansion(1.0, vec![0.0, 2.0]).unwrap();
        // 2 R_1^1(cos t) = C_1^1(cos t)
        let s = gegenbauer_coefficients(&g, dim(3), 3, 1e-12).unwrap();
        for (n, &a) in s.coefficients.iter().enumerate() {
            let want = if n == 1 { PI / 2.0 } else { 0.0 };
            assert!((a - want).abs() < 1e-10, "a_{n} = {a}");
        }
    }

    #[test]
    fn zero_kernel_series() {
        let s = gegenbauer_coefficients(&KernelSpec::zero(), dim(3), 4, 1e-12).unwrap();
        assert!(s.coefficients.iter().all(|&a| a == 0.0));
        let v = schoenberg_test(&s, 1e-14);
        assert_eq!(v.status, PdStatus::Psd);
        assert_eq!(v.margins.positive, 0);
        assert_eq!(v.margins.min_value, 0.0);
    }

    #[test]
    fn indefinite_expansion_has_witness() {
        let g = KernelSpec::expansion(1.0, vec![1.0, 0.5, -0.3, 0.2]).unwrap();
        let s = gegenbauer_coefficients(&g, dim(3), 6, 1e-12).unwrap();
        let v = schoenberg_test(&s, 1e-10);
        assert_eq!(v.status, PdStatus::NotPd);
        assert_eq!(
            v.witness,
            Some(Witness::Coefficient {
                n: 2,
                value: s.coefficients[2]
            })
        );
    }

    #[test]
    fn hankel_ball_indicator() {
        let g = KernelSpec::indicator(1.0).unwrap();
        let v = hankel_transform(&g, dim(3), 2.0).unwrap();
        assert_relative_eq!(
            v,
            4.0 * PI * (2f64.sin() - 2.0 * 2f64.cos()) / 8.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            hankel_transform(&g, dim(3), 0.0).unwrap(),
            4.0 * PI / 3.0,
            max_relative = 1e-13
        );
        assert_eq!(hankel_transform(&KernelSpec::zero(), dim(2), 1.0).unwrap(), 0.0);
        // d = 1: 2 ∫_0^1 cos(ξu) du
        let v = hankel_transform(&g, dim(1), 3.0).unwrap();
        assert_relative_eq!(v, 2.0 * 3f64.sin() / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn gram_examples() {
        let g = KernelSpec::truncated_power(1.0, 2.0).unwrap();
        let ps = PointSet::new(Space::Sphere(2), vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let (min, _) = gram_min_eigen(&g, &ps);
        assert!(min.abs() < 1e-15);
        let pts = (0..3)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / 3.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        let ps = PointSet::new(Space::Sphere(1), pts).unwrap();
        let (min, _) = gram_min_eigen(&KernelSpec::cosine(), &ps);
        assert!(min.abs() < 1e-14, "{min}");
    }

    #[test]
    fn gram_oracle_is_deterministic() {
        let g = KernelSpec::truncated_power(0.8, 1.5).unwrap();
        let a = gram_oracle(&g, Space::Sphere(2), 60, 3, 7, 1e-8).unwrap();
        let b = gram_oracle(&g, Space::Sphere(2), 60, 3, 7, 1e-8).unwrap();
        assert_eq!(a.min_eigenvalue.to_bits(), b.min_eigenvalue.to_bits());
        assert!(a.min_eigenvalue >= -1e-8 * g.value(0.0));
    }

    #[test]
    fn converse_constant_matches_bessel_limit() {
        // λ = 1/2: R_n(cos(t/n)) → J_0(t), c = 1/(2π)
        assert_relative_eq!(converse_constant(dim(2)), 1.0 / (2.0 * PI), max_relative = 1e-15);
    }
}
