//! Round-trip spectral data and the log-determinant integrand.
//!
//! The energy density at one spectral point depends on the two reflection
//! matrices only through tr(R₁R₂) and det(R₁R₂) = det R₁ · det R₂: for a
//! 2×2 round trip, det(I − M x) = 1 − tr(M)x + det(M)x² with x the
//! propagation factor e^(−2·gap·ρ₃). Both invariants are unchanged under
//! R → −R of both plates, which is why the identity and minus-identity
//! conventions for ideal walls give the same spectrum.

use crate::error::{CasimirError, Result};
use crate::media::{cavity_momentum, PlateModel, SpectralPoint};
use crate::reflection::{reflection_matrix, ReflectionMatrix};

/// The scalar data the integrand needs at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTrip {
    pub trace_r1r2: f64,
    pub det_r1r2: f64,
    /// Cavity axial momentum ρ₃ = √(ε₃ξ² + k⊥²).
    pub rho3: f64,
    /// Retained so positivity violations can report where they happened.
    pub point: SpectralPoint,
}

impl RoundTrip {
    /// Build both reflection matrices for a cavity at misalignment `chi`
    /// (plate 1 at azimuthal offset 0, plate 2 at offset `chi`) and reduce
    /// them to the product invariants.
    pub fn from_plates(
        p: SpectralPoint,
        plate1: &PlateModel,
        plate2: &PlateModel,
        eps3: f64,
        chi: f64,
    ) -> Result<Self> {
        let r1 = reflection_matrix(p, plate1, eps3, 0.0)?;
        let r2 = reflection_matrix(p, plate2, eps3, chi)?;
        Ok(Self::from_matrices(r1, r2, cavity_momentum(p, eps3)?, p))
    }

    pub fn from_matrices(r1: ReflectionMatrix, r2: ReflectionMatrix, rho3: f64, p: SpectralPoint) -> Self {
        RoundTrip {
            trace_r1r2: r1.trace_product(r2),
            det_r1r2: r1.det() * r2.det(),
            rho3,
            point: p,
        }
    }
}

/// det(I − M) for a 2×2 matrix M = [[a, b], [c, d]]: 1 − (a + d) + (ad − bc).
pub fn det_one_minus(m: &[[f64; 2]; 2]) -> f64 {
    1.0 - (m[0][0] + m[1][1]) + (m[0][0] * m[1][1] - m[0][1] * m[1][0])
}

/// ln det(I − R₁R₂ e^(−2·gap·ρ₃)) evaluated through ln(1 + t) with
/// t = −tr·x + det·x², so the small-t regime (large gap·ρ₃, where the
/// integrand decays like −tr·x) keeps full relative accuracy.
///
/// For passive plates |t| < 1 and the argument is strictly positive; a
/// nonpositive argument means a reflection model produced gain and is
/// reported as a hard error instead of a silent NaN.
pub fn log_integrand(rt: &RoundTrip, gap: f64) -> Result<f64> {
    let x = (-2.0 * gap * rt.rho3).exp();
    let t = (rt.det_r1r2 * x - rt.trace_r1r2) * x;
    if t <= -1.0 {
        return Err(CasimirError::SpectralPositivity {
            xi: rt.point.xi,
            k_perp: rt.point.k_perp,
            phi: rt.point.phi,
            argument: 1.0 + t,
        });
    }
    Ok(t.ln_1p())
}

/// Ideal-wall round trip: tr = 2, det = 1, so the integrand collapses to
/// ln((1 − x)²) = 2·ln(1 − x).
pub fn log_integrand_ideal(gap_times_rho3: f64) -> f64 {
    2.0 * (-(-2.0 * gap_times_rho3).exp()).ln_1p()
}
