//! Exact resolution graphs and Lipschitz inner-geometry invariants of
//! superisolated surface singularities.

pub mod error;
pub mod polar;
pub mod poly;
pub mod report;
pub mod resolve;
pub mod scalar;
pub mod sis;

pub use error::{Error, Result};

/// Exact rational numbers.
pub type Rat = scalar::Rat;
/// The scalar every pipeline stage runs over.
pub type Scalar = scalar::AlgNum;
/// Polynomials over [`Scalar`].
pub type Poly = poly::MPoly<Scalar>;
/// Polynomials with rational coefficients.
pub type RatPoly = poly::MPoly<Rat>;
