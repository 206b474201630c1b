//! Special functions: classical orthogonal polynomials, Bessel functions of
//! the first kind, Gamma ratios and the Bessel-type asymptotics of Jacobi
//! polynomials.

mod asymptotic;
mod bessel;
pub(crate) mod dd;
pub mod gamma;
mod poly;

pub use asymptotic::{
    cosine_expansion, jacobi_bessel_approx, legendre_values, AsymptoticApprox, ENDPOINT_MARGIN,
    JACOBI_BESSEL_AUDIT_CONSTANT, LARGE_DEGREE, LEGENDRE_BESSEL_CONSTANT,
};
pub use bessel::{bessel, bessel_j};
pub use gamma::{gamma_ratio, ln_gamma_ratio, pochhammer};
pub use poly::{binomial, gegenbauer_at_one, gegenbauer_eval, jacobi_eval, legendre_eval, LegendreValues, PolyIndex};
#[allow(unused_imports)]
pub(crate) use poly::{legendre_unchecked, normalized_gegenbauer};
