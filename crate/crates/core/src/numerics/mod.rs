//! Small dense linear algebra, adaptive quadrature, and seeded random
//! sampling kernels shared by the channel, jitter, and distribution modules.
//!
//! Everything here is deliberately fixed-size (4×4 for the jitter angle
//! space) or one-dimensional; there is no general n×n linear algebra
//! surface.

mod linalg;
mod quadrature;
mod rng;
pub(crate) mod special;

pub use linalg::{det4, jacobi_eigen, solve4, EigenDecomp, SymMatrix4, Vec4};
pub use quadrature::{integrate_adaptive, IntegralEstimate, QuadratureSpec};
pub use rng::{sample_gaussian, sample_poisson, SimRng};

use thiserror::Error;

/// Errors raised by the numeric kernels.
#[derive(Debug, Clone, Error)]
pub enum NumericsError {
    /// Input contained a NaN or infinity.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    /// Matrix failed the symmetry tolerance.
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {diff:e} exceeds tolerance")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    /// Linear system is singular to working precision.
    #[error("singular matrix: |det| = {det:e} below threshold {threshold:e}")]
    Singular { det: f64, threshold: f64 },
    /// Invalid argument (negative standard deviation, reversed bounds, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
