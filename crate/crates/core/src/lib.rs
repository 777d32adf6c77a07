//! Prime geodesic statistics on the Picard manifold `PSL(2, ℤ[i])\ℍ³`.
//!
//! Exact Gaussian-integer arithmetic, Kloosterman sums over `ℤ[i]`, the
//! discriminant / Pell / class-number census behind `ψ_Γ(X)`, and the
//! spectral-side test functions and transforms.

pub mod error;
pub mod export;
pub mod gaussian;
pub mod golden;
pub mod census;
pub mod kloosterman;
pub mod numeric;
pub mod spectral;

pub use error::{Error, Result};
pub use gaussian::{Gaussian, GaussianInt, Scalar};
