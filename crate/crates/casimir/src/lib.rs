//! Casimir interaction of parallel-plate cavities.
//!
//! The cavity walls may be ideal conductors, isotropic dielectrics, or
//! uniaxial anisotropic media with in-plane optic axes. Every quantity is
//! obtained by quadrature of a reflection-matrix log-determinant spectral
//! integrand over imaginary frequency and transverse momentum; closed-form
//! limits (ideal conductor, Fresnel, perfectly anisotropic) serve as fast
//! paths and cross-checks. A view-factor correction handles square plates
//! of finite extent.
//!
//! Internally everything is dimensionless: lengths in units of the gap,
//! momenta in units of inverse gap. Unit conversion happens once, at the
//! output boundary.

pub mod cli;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod media;
pub mod reflection;
pub mod spectrum;

mod quad;

pub use error::{CasimirError, Result};

/// ħc in J·m; the single physical constant in the crate.
pub const HBAR_C: f64 = 3.16152677e-26;
