//! Dielectric plate models and axial-momentum kinematics on the
//! imaginary-frequency axis.
//!
//! Permittivities are real, positive, non-dispersive constants; a
//! frequency-dependent ε(iξ) hook is deliberately out of scope. With real ε
//! every radicand below is positive, so the positive real square root is
//! used throughout.

use crate::error::{CasimirError, Result};

/// One point (ξ, k⊥, φ) of the Wick-rotated spectral domain.
///
/// ξ is the imaginary-frequency variable and k⊥ the transverse wavenumber,
/// both in inverse length (inverse gap units internally); φ is the azimuth
/// of k⊥ measured from the laboratory x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub xi: f64,
    pub k_perp: f64,
    pub phi: f64,
}

impl SpectralPoint {
    pub fn new(xi: f64, k_perp: f64, phi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(CasimirError::invalid(format!("xi must be finite and >= 0, got {xi}")));
        }
        if !(k_perp.is_finite() && k_perp >= 0.0) {
            return Err(CasimirError::invalid(format!(
                "k_perp must be finite and >= 0, got {k_perp}"
            )));
        }
        if !phi.is_finite() {
            return Err(CasimirError::invalid("phi must be finite"));
        }
        Ok(Self {
            xi,
            k_perp,
            phi: phi.rem_euclid(2.0 * std::f64::consts::PI),
        })
    }

    /// ξ = k⊥ = 0 carries no propagating content and breaks the polarization
    /// basis; reflection constructors reject it.
    pub fn is_degenerate(&self) -> bool {
        self.xi == 0.0 && self.k_perp == 0.0
    }
}

/// Uniaxial medium with in-plane optic axis: ε∥ along the axis, ε⊥ across it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniaxialMedium {
    pub eps_parallel: f64,
    pub eps_perp: f64,
    /// Optic-axis angle in the plate plane, radians from the lab x-axis.
    pub axis_angle: f64,
}

impl UniaxialMedium {
    pub fn new(eps_parallel: f64, eps_perp: f64, axis_angle: f64) -> Result<Self> {
        for (name, v) in [("eps_parallel", eps_parallel), ("eps_perp", eps_perp)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CasimirError::invalid(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if !axis_angle.is_finite() {
            return Err(CasimirError::invalid("axis_angle must be finite"));
        }
        Ok(Self {
            eps_parallel,
            eps_perp,
            axis_angle,
        })
    }

    pub fn isotropic(eps: f64) -> Result<Self> {
        Self::new(eps, eps, 0.0)
    }

    pub fn is_isotropic(&self) -> bool {
        self.eps_parallel == self.eps_perp
    }
}

/// Wall model of one plate.
///
/// The perfectly anisotropic wall (ε∥ = 1 with unbounded ε⊥) is a dedicated
/// closed-form model, not a `Uniaxial` with an infinite entry: permittivities
/// in `UniaxialMedium` must stay finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlateModel {
    IdealConductor,
    Isotropic { eps: f64 },
    Uniaxial(UniaxialMedium),
    PerfectlyAnisotropic { axis_angle: f64 },
}

impl PlateModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PlateModel::IdealConductor => Ok(()),
            PlateModel::Isotropic { eps } => {
                if eps.is_finite() && eps > 0.0 {
                    Ok(())
                } else {
                    Err(CasimirError::invalid(format!("eps must be finite and > 0, got {eps}")))
                }
            }
            PlateModel::Uniaxial(m) => UniaxialMedium::new(m.eps_parallel, m.eps_perp, m.axis_angle).map(|_| ()),
            PlateModel::PerfectlyAnisotropic { axis_angle } => {
                if axis_angle.is_finite() {
                    Ok(())
                } else {
                    Err(CasimirError::invalid("axis_angle must be finite"))
                }
            }
        }
    }

    /// True when the reflection matrix can depend on azimuth.
    pub fn is_anisotropic(&self) -> bool {
        match *self {
            PlateModel::IdealConductor | PlateModel::Isotropic { .. } => false,
            PlateModel::Uniaxial(m) => !m.is_isotropic(),
            PlateModel::PerfectlyAnisotropic { .. } => true,
        }
    }
}

/// Axial (out-of-plane) decay momenta of the two transmitted waves inside a
/// uniaxial plate: ordinary `rho` and extraordinary `rho_tilde`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialMomenta {
    pub rho: f64,
    pub rho_tilde: f64,
}

/// Cavity-side axial momentum ρ₃ = √(ε₃ξ² + k⊥²).
pub fn cavity_momentum(p: SpectralPoint, eps3: f64) -> Result<f64> {
    if !(eps3.is_finite() && eps3 > 0.0) {
        return Err(CasimirError::invalid(format!("eps3 must be finite and > 0, got {eps3}")));
    }
    Ok((eps3 * p.xi * p.xi + p.k_perp * p.k_perp).sqrt())
}

/// Ordinary and extraordinary axial momenta inside a plate.
///
/// The azimuth entering the extraordinary radical is measured from the
/// plate's optic axis: φ_eff = φ + angle_offset − axis_angle, with offset 0
/// for plate 1 and the relative rotation χ for plate 2. Tangential wavevector
/// components are shared with the cavity; only the axial component changes.
///
///   ρ  = √(ε⊥ ξ² + k⊥²)
///   ρ̃  = √(ε∥ ξ² + k⊥² + k⊥² (ε∥/ε⊥ − 1) cos²φ_eff)
pub fn axial_momenta(p: SpectralPoint, m: &UniaxialMedium, angle_offset: f64) -> Result<AxialMomenta> {
    let k2 = p.k_perp * p.k_perp;
    let u = p.xi * p.xi;
    let rho2 = m.eps_perp * u + k2;
    let c = (p.phi + angle_offset - m.axis_angle).cos();
    let rho_t2 = m.eps_parallel * u + k2 + k2 * (m.eps_parallel / m.eps_perp - 1.0) * c * c;
    // positive permittivities make both radicands sums of nonnegative terms
    // (ρ̃² = ε∥ξ² + k⊥²sin² + (ε∥/ε⊥)k⊥²cos²); a negative value can only mean
    // a broken caller, so fail loudly.
    if rho2 < 0.0 || rho_t2 < 0.0 {
        return Err(CasimirError::invalid(format!(
            "negative axial radicand (rho²={rho2:.3e}, rho_tilde²={rho_t2:.3e})"
        )));
    }
    Ok(AxialMomenta {
        rho: rho2.sqrt(),
        rho_tilde: rho_t2.sqrt(),
    })
}
