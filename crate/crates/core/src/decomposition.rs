//! Half-angle expansion of Gegenbauer polynomials, the dilation identity it
//! implies for truncated integrals, and the `F_ℓ` derivative decomposition.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernels::{dilate, integrate_against, KernelSpec};
use crate::quadrature::QuadOptions;
use crate::specfun::normalized_gegenbauer;

/// Coefficients `a_{n,j}^λ`, `j = n..=n+λ`, of
/// `R_n^λ(cos t) cos^{2λ}(t/2) = Σ_j a_{n,j}^λ R_{2j}^λ(cos(t/2))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfAngleCoeffs {
    pub n: usize,
    pub lambda: u32,
    /// `coeffs[i] = a_{n, n+i}`.
    pub coeffs: Vec<f64>,
    /// Computed in exact rational arithmetic.
    pub exact: bool,
}

impl HalfAngleCoeffs {
    pub fn get(&self, j: usize) -> Option<f64> {
        j.checked_sub(self.n).and_then(|i| self.coeffs.get(i)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &a)| (self.n + i, a))
    }

    /// CSV rows `n,lambda,j,a` (no header).
    pub fn csv_rows(&self) -> String {
        self.iter()
            .map(|(j, a)| format!("{},{},{j},{a:e}\n", self.n, self.lambda))
            .collect()
    }
}

/// Largest `n + λ` handled in exact arithmetic.
pub const EXACT_LIMIT: usize = 30;

fn check_lambda(lambda: u32) -> Result<()> {
    if lambda == 0 {
        return Err(domain("lambda", 0.0, "positive integer"));
    }
    Ok(())
}

/// Generic field operations shared by the exact and floating paths.
trait Field:
    Clone + Zero + One + std::ops::Add<Output = Self> + std::ops::Mul<Output = Self> + std::ops::Div<Output = Self>
{
    fn from_half(twice: i64) -> Self;
}

impl Field for f64 {
    fn from_half(twice: i64) -> Self {
        twice as f64 / 2.0
    }
}

impl Field for BigRational {
    fn from_half(twice: i64) -> Self {
        BigRational::new(BigInt::from(twice), BigInt::from(2))
    }
}

/// Apply `cos²(t/2) P_k^{(a, b)} = A P_k^{(a, b−1)} + B P_{k+1}^{(a, b−1)}`
/// `λ` times starting from `P_n^{(a, a)}`, `a = λ − 1/2`, then convert
/// `P_j^{(a, −1/2)}(cos t)` to `P_{2j}^{(a, a)}(cos(t/2))` and normalize.
fn half_angle<T: Field>(n: usize, lambda: u32) -> Vec<T> {
    let l = lambda as i64;
    let a2 = 2 * l - 1; // 2a
    let mut gamma: Vec<T> = vec![T::one()];
    for step in 0..l {
        let b2 = a2 - 2 * step; // 2b for the current β
        let mut next = vec![T::zero(); gamma.len() + 1];
        for (i, g) in gamma.iter().enumerate() {
            let k = (n + i) as i64;
            let denom = T::from_half(4 * k + a2 + b2 + 2);
            let a = T::from_half(2 * k + b2) / denom.clone();
            let b = T::from_half(2 * k + 2) / denom;
            next[i] = next[i].clone() + g.clone() * a;
            next[i + 1] = next[i + 1].clone() + g.clone() * b;
        }
        gamma = next;
    }
    // Γ(j+a+1) n! / (Γ(n+a+1) j!) = Π_{i=n+1}^{j} (i+a)/i
    let mut factor = T::one();
    gamma
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            if i > 0 {
                let m = (n + i) as i64;
                factor = factor.clone() * T::from_half(2 * m + a2) / T::from_half(2 * m);
            }
            g * factor.clone()
        })
        .collect()
}

/// Exact coefficients as rationals.
pub fn lemma23_coeffs_exact(n: usize, lambda: u32) -> Result<Vec<BigRational>> {
    check_lambda(lambda)?;
    Ok(half_angle::<BigRational>(n, lambda))
}

pub fn lemma23_coeffs(n: usize, lambda: u32) -> Result<HalfAngleCoeffs> {
    check_lambda(lambda)?;
    let exact = n + lambda as usize <= EXACT_LIMIT;
    let coeffs = if exact {
        half_angle::<BigRational>(n, lambda)
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::NAN))
            .collect()
    } else {
        half_angle::<f64>(n, lambda)
    };
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Overflow(format!(
            "half-angle coefficients for n = {n}, lambda = {lambda}"
        )));
    }
    Ok(HalfAngleCoeffs {
        n,
        lambda,
        coeffs,
        exact,
    })
}

/// `max_t |R_n^λ(cos t) cos^{2λ}(t/2) − Σ_j a_{n,j} R_{2j}^λ(cos(t/2))|`.
pub fn verify_lemma23(n: usize, lambda: u32, t_grid: &[f64]) -> Result<f64> {
    let c = lemma23_coeffs(n, lambda)?;
    let l = lambda as f64;
    let mut worst = 0.0f64;
    for &t in t_grid {
        if !(0.0..=PI).contains(&t) {
            return Err(domain("t", t, "[0, pi]"));
        }
        let half = (t / 2.0).cos();
        let lhs = normalized_gegenbauer(n, l, t.cos()) * half.powi(2 * lambda as i32);
        let rhs: f64 = c.iter().map(|(j, a)| a * normalized_gegenbauer(2 * j, l, half)).sum();
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Both sides of a dilation identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// `residual / |lhs|` (or the residual itself when `lhs = 0`).
    pub relative: f64,
    pub abs_error_est: f64,
}

/// Degrees and weights after `m` half-angle steps:
/// `R_n(cos t) sin^{2λ} t dt ↦ Σ w_k R_k(cos s) sin^{2λ} s ds` on `s = t/2^m`.
pub fn refinement_weights(n: usize, lambda: u32, m: u32) -> Result<BTreeMap<usize, f64>> {
    check_lambda(lambda)?;
    let scale = 2f64.powi(2 * lambda as i32 + 1);
    let mut w = BTreeMap::from([(n, 1.0)]);
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for (&deg, &wt) in &w {
            for (j, a) in lemma23_coeffs(deg, lambda)?.iter() {
                *next.entry(2 * j).or_insert(0.0) += wt * a * scale;
            }
        }
        w = next;
    }
    Ok(w)
}

/// `∫_0^θ f(t/θ) R_n^λ(cos t) sin^{2λ} t dt` against the `m`-fold halved form
/// `Σ_k w_k ∫_0^{θ/2^m} f(2^m s/θ) R_k^λ(cos s) sin^{2λ} s ds`.
pub fn refinement_check_iterated(f: &KernelSpec, n: usize, theta: f64, lambda: u32, m: u32) -> Result<RefinementCheck> {
    check_lambda(lambda)?;
    if !(theta > 0.0 && theta <= PI) {
        return Err(domain("theta", theta, "(0, pi]"));
    }
    if f.support_end > 1.0 {
        return Err(Error::InvalidArgument("profile must be supported in [0, 1]".into()));
    }
    if f.is_zero() {
        return Ok(RefinementCheck {
            lhs: 0.0,
            rhs: 0.0,
            residual: 0.0,
            relative: 0.0,
            abs_error_est: 0.0,
        });
    }
    let l = lambda as f64;
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        ..QuadOptions::default()
    };
    let integral = |deg: usize, scale: f64| {
        let g = dilate(f, scale);
        integrate_against(
            &g,
            |t: f64| normalized_gegenbauer(deg, l, t.cos()) * t.sin().powi(2 * lambda as i32),
            PI,
            deg as f64 + l,
            &opts,
        )
    };
    let left = integral(n, theta);
    let sub = theta / 2f64.powi(m as i32);
    let mut rhs = 0.0;
    let mut err = left.abs_error_est;
    for (deg, w) in refinement_weights(n, lambda, m)? {
        let r = integral(deg, sub);
        rhs += w * r.value;
        err += w.abs() * r.abs_error_est;
    }
    let residual = (left.value - rhs).abs();
    Ok(RefinementCheck {
        lhs: left.value,
        rhs,
        residual,
        relative: if left.value != 0.0 {
            residual / left.value.abs()
        } else {
            residual
        },
        abs_error_est: err,
    })
}

pub fn refinement_check(f: &KernelSpec, n: usize, theta: f64, lambda: u32) -> Result<RefinementCheck> {
    refinement_check_iterated(f, n, theta, lambda, 1)
}

/// Coefficients `α_{ℓ,k}^{(j)}` of
/// `F_ℓ(t) = Σ_j θ^{−j} f^{(j)}(t/θ) Σ_k α_{ℓ,k}^{(j)} sin^{2λ−2ℓ+j+2k} t cos^{ℓ−j−2k} t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FEllTable {
    pub lambda: u32,
    pub ell: u32,
    /// `alpha[j][k]`.
    pub alpha: Vec<Vec<i128>>,
}

impl FEllTable {
    pub fn get(&self, j: usize, k: usize) -> i128 {
        self.alpha.get(j).and_then(|r| r.get(k)).copied().unwrap_or(0)
    }

    /// `F_ℓ(t)` from the closed form; `derivs[j] = f^{(j)}(t/θ)`.
    pub fn eval(&self, t: f64, theta: f64, derivs: &[f64]) -> f64 {
        let (s, c) = t.sin_cos();
        let (l, ell) = (self.lambda as i32, self.ell as i32);
        let mut total = 0.0;
        for (j, row) in self.alpha.iter().enumerate() {
            let ji = j as i32;
            let inner: f64 = row
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(k, &a)| {
                    let k = k as i32;
                    a as f64 * s.powi(2 * l - 2 * ell + ji + 2 * k) * c.powi(ell - ji - 2 * k)
                })
                .sum();
            total += theta.powi(-ji) * derivs[j] * inner;
        }
        total
    }
}

/// Builds the table by the product-rule recursion, starting from
/// `F_0 = f(t/θ) sin^{2λ} t`.
pub fn f_ell_coeffs(lambda: u32, ell: u32) -> Result<FEllTable> {
    check_lambda(lambda)?;
    if ell > lambda {
        return Err(Error::InvalidArgument(format!("ell = {ell} exceeds lambda = {lambda}")));
    }
    let overflow = || Error::Overflow(format!("F_ell coefficients for lambda = {lambda}"));
    let l = lambda as i128;
    let mut alpha: Vec<Vec<i128>> = vec![vec![1]];
    for cur in 0..ell as i128 {
        let next_ell = cur + 1;
        let mut next: Vec<Vec<i128>> = (0..=next_ell)
            .map(|j| vec![0; ((next_ell - j) / 2 + 1) as usize])
            .collect();
        for (j, row) in alpha.iter().enumerate() {
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let (ji, ki) = (j as i128, k as i128);
                let p = 2 * l - 2 * cur + ji + 2 * ki; // power of sin
                let q = cur - ji - 2 * ki; // power of cos
                let add = |slot: &mut i128, v: i128| -> Result<()> {
                    *slot = slot.checked_add(v).ok_or_else(overflow)?;
                    Ok(())
                };
                add(&mut next[j + 1][k], a)?;
                add(&mut next[j][k], a.checked_mul(p - 1).ok_or_else(overflow)?)?;
                if q > 0 {
                    add(&mut next[j][k + 1], a.checked_mul(-q).ok_or_else(overflow)?)?;
                }
            }
        }
        alpha = next;
    }
    Ok(FEllTable { lambda, ell, alpha })
}

/// A polynomial profile `f(u) = Σ c_i u^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// `u^a (1 − u)^b`.
    pub fn bump(a: usize, b: usize) -> Self {
        let mut coeffs = vec![0.0; a + b + 1];
        let mut binom = 1.0;
        for i in 0..=b {
            coeffs[a + i] = if i % 2 == 0 { binom } else { -binom };
            binom = binom * (b - i) as f64 / (i + 1) as f64;
        }
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }
}

// Central difference weights of order 8 for the first derivative.
const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

fn diff8<F: Fn(f64) -> f64>(f: &F, t: f64, h: f64) -> f64 {
    D1.iter()
        .enumerate()
        .map(|(i, w)| {
            let k = (i + 1) as f64;
            w * (f(t + k * h) - f(t - k * h))
        })
        .sum::<f64>()
        / h
}

/// Derivative with one Richardson step on `h, h/2`.
fn richardson<F: Fn(f64) -> f64>(f: &F, t: f64, h: f64) -> f64 {
    let coarse = diff8(f, t, h);
    let fine = diff8(f, t, h / 2.0);
    (256.0 * fine - coarse) / 255.0
}

/// `F_ℓ(t)` by nested numerical differentiation of `F_{ℓ−1}/sin`.
fn f_ell_numeric(f: &Polynomial, lambda: u32, ell: u32, theta: f64, t: f64, h: f64) -> f64 {
    if ell == 0 {
        return f.eval(t / theta) * t.sin().powi(2 * lambda as i32);
    }
    let prev = |x: f64| f_ell_numeric(f, lambda, ell - 1, theta, x, h) / x.sin();
    richardson(&prev, t, h)
}

/// Relative sup-norm gap between the closed form of `F_ℓ` and nested finite
/// differences on `t_grid ⊂ (0, θ]`.
pub fn verify_f_ell(f: &Polynomial, lambda: u32, ell: u32, theta: f64, t_grid: &[f64]) -> Result<f64> {
    let table = f_ell_coeffs(lambda, ell)?;
    if !(theta > 0.0 && theta < PI) {
        return Err(domain("theta", theta, "(0, pi)"));
    }
    let mut derivs_poly = vec![f.clone()];
    for j in 0..ell as usize {
        let d = derivs_poly[j].derivative();
        derivs_poly.push(d);
    }
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &t in t_grid {
        if !(t > 0.0 && t < PI) {
            return Err(domain("t", t, "(0, pi)"));
        }
        let derivs: Vec<f64> = derivs_poly.iter().map(|p| p.eval(t / theta)).collect();
        let closed = table.eval(t, theta, &derivs);
        // keep every nested stencil point inside (0.2 t, 1.8 t)
        let h = (0.05 * theta).min(0.8 * t / (4.0 * ell.max(1) as f64));
        let numeric = f_ell_numeric(f, lambda, ell, theta, t, h);
        if !numeric.is_finite() {
            return Err(Error::NonConvergence {
                value: numeric,
                abs_error_est: f64::INFINITY,
                evaluations: 0,
            });
        }
        worst = worst.max((closed - numeric).abs());
        scale = scale.max(closed.abs());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}
