//! Positive definiteness of isotropic kernels on spheres and on Euclidean
//! space: Gegenbauer and Hankel-transform criteria, Gram-matrix checks, and
//! numerical audits of the truncated-power kernel family.

// `!(x > a)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conjecture_lab;
pub mod decomposition;
pub mod error;
pub mod kernels;
pub mod pd_tester;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
