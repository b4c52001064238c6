//! Interaction energy per unit area, normal pressure, and alignment torque
//! for the parallel-plate cavity, by quadrature of the spectral
//! log-determinant.
//!
//! Everything inside the quadrature is dimensionless. With ξ = p·cosθ,
//! k⊥ = p·sinθ and the substitution u = gap·p, the energy per unit area is
//!
//!   E/A = pref/(8π³·a³) · ∫₀^{2π}dφ ∫₀^{π/2}dθ sinθ ∫₀^∞du u²
//!             · ln det(I − R₁R₂ e^(−2·u·w(θ)))
//!
//! with w(θ) = √(ε₃cos²θ + sin²θ) and pref = ħc (SI) or 1 (natural units).
//! The reflection matrices of every in-scope model are homogeneous of degree
//! zero in (ξ, k⊥), so R₁R₂ depends on (θ, φ) only: each matrix pair is
//! built once per direction and reused across the whole radial rule. The
//! substitution also makes the reduced integral gap-independent, which is
//! what the 1/a³ scaling law and the gap-independence of E/E₀ ratios test.

use crate::error::{CasimirError, Result};
use crate::media::{PlateModel, SpectralPoint};
use crate::quad::{gauss_legendre_on, radial_rule, Neumaier};
use crate::reflection::{boundary_solve_reflection, reflection_matrix, ReflectionMatrix};
use crate::spectrum::{log_integrand, RoundTrip};
use crate::HBAR_C;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Output unit system. `Si`: J/m² (energy), J/m³ (pressure), J/(m²·rad)
/// (torque), lengths in meters. `Natural`: ħc = 1 and lengths are pure
/// numbers, so energy per area at gap 1 is the reduced integral itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Si,
    Natural,
}

impl Units {
    fn hbar_c(self) -> f64 {
        match self {
            Units::Si => HBAR_C,
            Units::Natural => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Infinite,
    /// Square plates spanning (−b, b)²; handled by the `geometry` module.
    FiniteSquare { half_side: f64 },
}

/// Which reflection implementation feeds the quadrature. `ClosedForm` is the
/// production path; `BoundarySolve` runs the linear-solve oracle end to end
/// so whole energies can be cross-validated between the two routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionRoute {
    ClosedForm,
    BoundarySolve,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Plate separation: meters in SI mode, a pure number in natural mode.
    pub gap: f64,
    /// Cavity permittivity ε₃ (1 = vacuum).
    pub eps_cavity: f64,
    pub plate1: PlateModel,
    pub plate2: PlateModel,
    /// Misalignment angle: plate 1 sits at azimuth offset 0, plate 2 at χ.
    pub chi: f64,
    pub geometry: Geometry,
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gap.is_finite() && self.gap > 0.0) {
            return Err(CasimirError::invalid(format!("gap must be finite and > 0, got {}", self.gap)));
        }
        if !(self.eps_cavity.is_finite() && self.eps_cavity > 0.0) {
            return Err(CasimirError::invalid(format!(
                "eps_cavity must be finite and > 0, got {}",
                self.eps_cavity
            )));
        }
        if !self.chi.is_finite() {
            return Err(CasimirError::invalid("chi must be finite"));
        }
        self.plate1.validate()?;
        self.plate2.validate()?;
        if let Geometry::FiniteSquare { half_side } = self.geometry {
            if !(half_side.is_finite() && half_side > 0.0) {
                return Err(CasimirError::invalid(format!(
                    "half_side must be finite and > 0, got {half_side}"
                )));
            }
        }
        Ok(())
    }

    fn require_infinite(&self, op: &str) -> Result<()> {
        match self.geometry {
            Geometry::Infinite => Ok(()),
            Geometry::FiniteSquare { .. } => Err(CasimirError::invalid(format!(
                "{op} is defined for infinite plates; use geometry::finite_plate_energy for FiniteSquare"
            ))),
        }
    }
}

/// Refinement-level grid sizes double together: level ℓ uses
/// `phi_nodes`·2^ℓ azimuthal, 16·2^ℓ polar, and 32·2^ℓ radial nodes, and the
/// error estimate is the change from the previous level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_refinement_levels: u32,
    /// Base azimuthal node count; must be even (the φ → 2π−φ and φ → φ+π
    /// symmetries then hold exactly on the grid) and at least 8.
    pub phi_nodes: usize,
    /// Scale s of the radial map u = s·t/(1−t), t ∈ (0,1).
    pub radial_map_scale: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-6,
            abs_tol: 1e-14,
            max_refinement_levels: 8,
            phi_nodes: 16,
            radial_map_scale: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(CasimirError::invalid(format!("rel_tol must be finite and > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol.is_finite() && self.abs_tol >= 0.0) {
            return Err(CasimirError::invalid(format!("abs_tol must be finite and ≥ 0, got {}", self.abs_tol)));
        }
        if self.max_refinement_levels == 0 {
            return Err(CasimirError::invalid("max_refinement_levels must be ≥ 1"));
        }
        if self.phi_nodes < 8 || !self.phi_nodes.is_multiple_of(2) {
            return Err(CasimirError::invalid(format!(
                "phi_nodes must be even and ≥ 8, got {}",
                self.phi_nodes
            )));
        }
        if !(self.radial_map_scale.is_finite() && self.radial_map_scale > 0.0) {
            return Err(CasimirError::invalid(format!(
                "radial_map_scale must be finite and > 0, got {}",
                self.radial_map_scale
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    /// For quadrature results: the last refinement delta, in output units.
    pub error_estimate: f64,
    /// Integrand evaluations across all refinement levels.
    pub evaluations: u64,
    pub units_tag: Units,
}

/// One refinement level of the convergence diagnostic. Values are the
/// reduced (natural-units, gap-1) energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelReport {
    pub level: u32,
    pub value: f64,
    pub error_estimate: Option<f64>,
    pub evaluations: u64,
}

const BASE_THETA_NODES: usize = 16;
const BASE_RADIAL_NODES: usize = 32;

#[derive(Clone, Copy)]
enum Integrand {
    /// u² · ln det(I − R₁R₂ e^(−2uw))
    Energy,
    /// u³ · w · (2·tr·y − 4·det·y²) / (1 − tr·y + det·y²), y = e^(−2uw):
    /// the gap-derivative of the energy integrand taken analytically, so
    /// P = −pref/(8π³a⁴)·∫ — no finite differencing in a anywhere.
    Pressure,
}

struct ReducedIntegral {
    value: f64,
    error_estimate: f64,
    evaluations: u64,
    level: u32,
}

/// One fixed-level evaluation of the reduced triple integral, including the
/// 1/(8π³) prefactor. Parallel over φ; accumulation order is fixed
/// (φ index, then θ index, then radial index, compensated), so the result is
/// bit-identical for any thread count.
#[allow(clippy::too_many_arguments)]
fn level_value(
    kind: Integrand,
    plate1: &PlateModel,
    plate2: &PlateModel,
    eps3: f64,
    chi: f64,
    route: ReflectionRoute,
    q: &QuadratureSpec,
    level: u32,
) -> Result<(f64, u64)> {
    let n_phi = q.phi_nodes << level;
    let n_theta = BASE_THETA_NODES << level;
    let n_radial = BASE_RADIAL_NODES << level;
    let (theta_nodes, theta_weights) = gauss_legendre_on(n_theta, 0.0, FRAC_PI_2);
    let (u_nodes, u_weights) = radial_rule(n_radial, q.radial_map_scale);

    let reflect = |p: SpectralPoint, plate: &PlateModel, offset: f64| -> Result<ReflectionMatrix> {
        match route {
            ReflectionRoute::ClosedForm => reflection_matrix(p, plate, eps3, offset),
            ReflectionRoute::BoundarySolve => boundary_solve_reflection(p, plate, eps3, offset),
        }
    };

    let per_phi: Vec<Result<f64>> = (0..n_phi)
        .into_par_iter()
        .map(|j| {
            let phi = TAU * j as f64 / n_phi as f64;
            let mut theta_sum = Neumaier::new();
            for (&theta, &w_theta) in theta_nodes.iter().zip(&theta_weights) {
                // unit-radius point: R is scale-invariant along the ray
                let direction = SpectralPoint {
                    xi: theta.cos(),
                    k_perp: theta.sin(),
                    phi,
                };
                let r1 = reflect(direction, plate1, 0.0)?;
                let r2 = reflect(direction, plate2, chi)?;
                let trace = r1.trace_product(r2);
                let det = r1.det() * r2.det();
                let w = (eps3 * direction.xi * direction.xi + direction.k_perp * direction.k_perp).sqrt();
                let mut radial_sum = Neumaier::new();
                for (&u, &w_u) in u_nodes.iter().zip(&u_weights) {
                    let g = match kind {
                        Integrand::Energy => {
                            let rt = RoundTrip {
                                trace_r1r2: trace,
                                det_r1r2: det,
                                rho3: w * u,
                                point: SpectralPoint {
                                    xi: u * direction.xi,
                                    k_perp: u * direction.k_perp,
                                    phi,
                                },
                            };
                            u * u * log_integrand(&rt, 1.0)?
                        }
                        Integrand::Pressure => {
                            let y = (-2.0 * u * w).exp();
                            let arg = 1.0 + (det * y - trace) * y;
                            if arg <= 0.0 {
                                return Err(CasimirError::SpectralPositivity {
                                    xi: u * direction.xi,
                                    k_perp: u * direction.k_perp,
                                    phi,
                                    argument: arg,
                                });
                            }
                            u * u * u * w * (2.0 * trace - 4.0 * det * y) * y / arg
                        }
                    };
                    radial_sum.add(w_u * g);
                }
                theta_sum.add(w_theta * theta.sin() * radial_sum.total());
            }
            Ok(theta_sum.total())
        })
        .collect();

    let w_phi = TAU / n_phi as f64;
    let mut phi_sum = Neumaier::new();
    for r in per_phi {
        phi_sum.add(w_phi * r?);
    }
    let evals = (n_phi * n_theta * n_radial) as u64;
    Ok((phi_sum.total() / (8.0 * PI * PI * PI), evals))
}

/// Refine until the level-to-level change satisfies
/// |Δ| ≤ max(rel_tol·|value|, abs_tol), or report the partial result.
#[allow(clippy::too_many_arguments)]
fn reduced_integral(
    kind: Integrand,
    plate1: &PlateModel,
    plate2: &PlateModel,
    eps3: f64,
    chi: f64,
    route: ReflectionRoute,
    q: &QuadratureSpec,
) -> Result<ReducedIntegral> {
    q.validate()?;
    let mut evaluations = 0u64;
    let mut prev: Option<f64> = None;
    let mut last_err = f64::INFINITY;
    let mut last_val = 0.0;
    for level in 0..=q.max_refinement_levels {
        let (value, n) = level_value(kind, plate1, plate2, eps3, chi, route, q, level)?;
        evaluations += n;
        if let Some(prev_value) = prev {
            let err = (value - prev_value).abs();
            if err <= q.abs_tol.max(q.rel_tol * value.abs()) {
                return Ok(ReducedIntegral {
                    value,
                    error_estimate: err,
                    evaluations,
                    level,
                });
            }
            last_err = err;
        }
        prev = Some(value);
        last_val = value;
    }
    Err(CasimirError::NotConverged {
        partial: last_val,
        error_estimate: last_err,
        evaluations,
        levels: q.max_refinement_levels,
    })
}

/// Rescale the partial value carried by a `NotConverged` error so it is in
/// the same units as the op's successful result.
fn scale_partial(err: CasimirError, scale: f64) -> CasimirError {
    match err {
        CasimirError::NotConverged {
            partial,
            error_estimate,
            evaluations,
            levels,
        } => CasimirError::NotConverged {
            partial: partial * scale,
            error_estimate: error_estimate * scale.abs(),
            evaluations,
            levels,
        },
        other => other,
    }
}

/// −π²·pref/(720·a³): the ideal-conductor closed form.
pub fn energy_ideal_closed(gap: f64, units: Units) -> Result<EnergyResult> {
    if !(gap.is_finite() && gap > 0.0) {
        return Err(CasimirError::invalid(format!("gap must be finite and > 0, got {gap}")));
    }
    Ok(EnergyResult {
        value: -PI * PI / 720.0 * units.hbar_c() / (gap * gap * gap),
        error_estimate: 0.0,
        evaluations: 0,
        units_tag: units,
    })
}

/// E/A for an infinite cavity, through the production reflection route.
pub fn energy_per_area(cfg: &CavityConfig, q: &QuadratureSpec, units: Units) -> Result<EnergyResult> {
    energy_per_area_with_route(cfg, q, units, ReflectionRoute::ClosedForm)
}

/// E/A with an explicit choice of reflection route. The two routes share the
/// quadrature, so their agreement isolates the reflection implementations.
pub fn energy_per_area_with_route(
    cfg: &CavityConfig,
    q: &QuadratureSpec,
    units: Units,
    route: ReflectionRoute,
) -> Result<EnergyResult> {
    cfg.validate()?;
    cfg.require_infinite("energy_per_area")?;
    let scale = units.hbar_c() / cfg.gap.powi(3);
    let reduced = reduced_integral(
        Integrand::Energy,
        &cfg.plate1,
        &cfg.plate2,
        cfg.eps_cavity,
        cfg.chi,
        route,
        q,
    )
    .map_err(|e| scale_partial(e, scale))?;
    Ok(EnergyResult {
        value: reduced.value * scale,
        error_estimate: reduced.error_estimate * scale,
        evaluations: reduced.evaluations,
        units_tag: units,
    })
}

/// Normal pressure on the plates, P = −∂(E/A)/∂a, by quadrature of the
/// analytically differentiated integrand. Negative = attraction.
pub fn pressure(cfg: &CavityConfig, q: &QuadratureSpec, units: Units) -> Result<EnergyResult> {
    cfg.validate()?;
    cfg.require_infinite("pressure")?;
    // the u³-integrand carries an overall minus relative to P
    let scale = -units.hbar_c() / cfg.gap.powi(4);
    let reduced = reduced_integral(
        Integrand::Pressure,
        &cfg.plate1,
        &cfg.plate2,
        cfg.eps_cavity,
        cfg.chi,
        ReflectionRoute::ClosedForm,
        q,
    )
    .map_err(|e| scale_partial(e, scale))?;
    Ok(EnergyResult {
        value: reduced.value * scale,
        error_estimate: reduced.error_estimate * scale.abs(),
        evaluations: reduced.evaluations,
        units_tag: units,
    })
}

/// Alignment torque per unit area, M = ∂(E/A)/∂χ.
///
/// χ enters through the Euler-angle dependence of R₂, so the derivative is
/// taken numerically: the energy is first converged adaptively at χ, then
/// re-evaluated at χ±h and χ±h/2 (h = 10⁻³ rad) on that same fixed grid
/// level — the χ-independent part of the quadrature error cancels in the
/// differences — and Richardson-combined, M = (4·D(h/2) − D(h))/3. The error
/// estimate adds the differencing estimate |D(h/2) − D(h)|/3 to the
/// (conservative) quadrature contribution err(Ê)/h.
pub fn torque_per_area(cfg: &CavityConfig, q: &QuadratureSpec, units: Units) -> Result<EnergyResult> {
    cfg.validate()?;
    cfg.require_infinite("torque_per_area")?;
    if !cfg.plate1.is_anisotropic() && !cfg.plate2.is_anisotropic() {
        return Err(CasimirError::invalid(
            "torque identically zero by symmetry: both plates are azimuthally isotropic",
        ));
    }
    let base = reduced_integral(
        Integrand::Energy,
        &cfg.plate1,
        &cfg.plate2,
        cfg.eps_cavity,
        cfg.chi,
        ReflectionRoute::ClosedForm,
        q,
    )?;
    let mut evaluations = base.evaluations;
    let mut at_chi = |chi: f64| -> Result<f64> {
        let (value, n) = level_value(
            Integrand::Energy,
            &cfg.plate1,
            &cfg.plate2,
            cfg.eps_cavity,
            chi,
            ReflectionRoute::ClosedForm,
            q,
            base.level,
        )?;
        evaluations += n;
        Ok(value)
    };
    let h = 1e-3;
    let d_h = (at_chi(cfg.chi + h)? - at_chi(cfg.chi - h)?) / (2.0 * h);
    let d_h2 = (at_chi(cfg.chi + 0.5 * h)? - at_chi(cfg.chi - 0.5 * h)?) / h;
    let derivative = (4.0 * d_h2 - d_h) / 3.0;
    let diff_err = (d_h2 - d_h).abs() / 3.0;
    let quad_err = base.error_estimate / h;
    let scale = units.hbar_c() / cfg.gap.powi(3);
    Ok(EnergyResult {
        value: derivative * scale,
        error_estimate: (diff_err + quad_err) * scale,
        evaluations,
        units_tag: units,
    })
}

/// E(χ)/E₀ over a list of misalignment angles, E₀ the ideal-conductor
/// closed form at the same gap. Defined for perfectly anisotropic plate
/// pairs, where both energies scale as 1/a³ and the ratio is gap-free.
pub fn normalized_energy_sweep(
    cfg: &CavityConfig,
    chis: &[f64],
    q: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    cfg.require_infinite("normalized_energy_sweep")?;
    let pa = |p: &PlateModel| matches!(p, PlateModel::PerfectlyAnisotropic { .. });
    if !(pa(&cfg.plate1) && pa(&cfg.plate2)) {
        return Err(CasimirError::invalid(
            "normalized_energy_sweep requires perfectly anisotropic plates on both sides",
        ));
    }
    let e0 = -PI * PI / 720.0;
    let mut out = Vec::with_capacity(chis.len());
    for &chi in chis {
        let reduced = reduced_integral(
            Integrand::Energy,
            &cfg.plate1,
            &cfg.plate2,
            cfg.eps_cavity,
            chi,
            ReflectionRoute::ClosedForm,
            q,
        )
        .map_err(|e| scale_partial(e, 1.0 / e0))?;
        out.push((chi, reduced.value / e0));
    }
    Ok(out)
}

/// Per-level convergence diagnostic for the energy quadrature: runs the
/// refinement ladder to convergence (or exhaustion, without erroring) and
/// reports every level. The error estimates should decrease monotonically.
pub fn refinement_profile(cfg: &CavityConfig, q: &QuadratureSpec) -> Result<Vec<LevelReport>> {
    cfg.validate()?;
    cfg.require_infinite("refinement_profile")?;
    q.validate()?;
    let mut reports = Vec::new();
    let mut prev: Option<f64> = None;
    for level in 0..=q.max_refinement_levels {
        let (value, evaluations) = level_value(
            Integrand::Energy,
            &cfg.plate1,
            &cfg.plate2,
            cfg.eps_cavity,
            cfg.chi,
            ReflectionRoute::ClosedForm,
            q,
            level,
        )?;
        let error_estimate = prev.map(|p| (value - p).abs());
        reports.push(LevelReport {
            level,
            value,
            error_estimate,
            evaluations,
        });
        if let Some(err) = error_estimate {
            if err <= q.abs_tol.max(q.rel_tol * value.abs()) {
                break;
            }
        }
        prev = Some(value);
    }
    Ok(reports)
}
