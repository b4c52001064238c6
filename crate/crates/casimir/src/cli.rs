//! Command-line front end: config ingestion, dispatch, sweep orchestration,
//! and plot-ready tabular output.
//!
//! One subcommand per mode; every config field can come from a TOML file
//! (`--config`) or a mirroring flag, with precedence defaults < file < flag.
//! Output is CSV (a `#`-prefixed header block, then data rows) or JSON with
//! the same content. Identical resolved configs produce byte-identical
//! output files regardless of thread count: the header embeds a hash of the
//! canonical config echo, floats are printed with 17 significant digits, and
//! all accumulation orders in the library are fixed.
//!
//! Exit codes: 0 success, 2 configuration error, 3 computational error,
//! 4 I/O error. A sweep row whose quadrature certificate failed is written
//! from the partial result and marked `flagged` in the status column rather
//! than aborting the run; hard errors (positivity, singular system) abort
//! the affected row with a logged reason and force exit code 3.

use crate::energy::{
    energy_ideal_closed, energy_per_area, pressure, torque_per_area, CavityConfig, EnergyResult,
    Geometry, QuadratureSpec, Units,
};
use crate::error::CasimirError;
use crate::geometry::{eta_with_error, finite_plate_energy};
use crate::media::{PlateModel, UniaxialMedium};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::PathBuf;

const MICRON: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(CasimirError),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Compute(e) => write!(f, "computational error: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

// ---------------------------------------------------------------------------
// resolved configuration

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Ideal,
    Lifshitz,
    Uniaxial,
    PerfectAniso,
    Finite,
    Torque,
    Sweep,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Ideal => "ideal",
            Mode::Lifshitz => "lifshitz",
            Mode::Uniaxial => "uniaxial",
            Mode::PerfectAniso => "perfect-aniso",
            Mode::Finite => "finite",
            Mode::Torque => "torque",
            Mode::Sweep => "sweep",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum UnitsChoice {
    Si,
    Natural,
}

impl UnitsChoice {
    fn to_units(self) -> Units {
        match self {
            UnitsChoice::Si => Units::Si,
            UnitsChoice::Natural => Units::Natural,
        }
    }
    fn name(self) -> &'static str {
        match self {
            UnitsChoice::Si => "si",
            UnitsChoice::Natural => "natural",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    A,
    Chi,
    #[serde(rename = "b_over_a")]
    #[value(name = "b-over-a")]
    BOverA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepSpacing {
    Linear,
    Log,
}

/// Fully resolved run description. A SHA-256 over the computation-defining
/// fields (mode, cavity, quadrature, sweep, units) is stamped into every
/// output header, so two artifacts with equal hashes came from identical
/// resolved settings.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub cavity: CavityFields,
    pub quadrature: QuadratureFields,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepFields>,
    pub output: OutputFields,
}

#[derive(Debug, Clone, Serialize)]
pub struct CavityFields {
    /// Gap in microns (SI mode) or the dimensionless gap (natural mode).
    pub gap_um: f64,
    pub eps_cavity: f64,
    /// Misalignment of plate 2's axis, degrees. Stored as given so the
    /// config echo round-trips exactly; converted to radians at compute time.
    pub chi_deg: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_par: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_perp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_side_um: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureFields {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_refinement_levels: u32,
    pub phi_nodes: usize,
    pub radial_map_scale: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepFields {
    pub variable: SweepVariable,
    /// Bounds are in the swept variable's input unit: microns (or the
    /// dimensionless gap) for `a`, degrees for `chi`, pure ratio for
    /// `b_over_a`.
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: SweepSpacing,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputFields {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: OutputFormat,
    pub units: UnitsChoice,
}

/// The hashed view of a config: everything that determines the numbers in
/// the table. Output routing (file path, CSV vs JSON) is deliberately
/// excluded so reruns of the same computation carry the same hash wherever
/// they are written.
#[derive(Serialize)]
struct HashedSettings<'a> {
    mode: Mode,
    units: UnitsChoice,
    cavity: &'a CavityFields,
    quadrature: &'a QuadratureFields,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<&'a SweepFields>,
}

impl RunConfig {
    pub fn canonical_toml(&self) -> String {
        toml::to_string(self).expect("plain config struct always serializes")
    }

    pub fn config_hash(&self) -> String {
        let view = HashedSettings {
            mode: self.mode,
            units: self.output.units,
            cavity: &self.cavity,
            quadrature: &self.quadrature,
            sweep: self.sweep.as_ref(),
        };
        let text = toml::to_string(&view).expect("plain config struct always serializes");
        let digest = Sha256::digest(text.as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            write!(hex, "{byte:02x}").expect("writing to String cannot fail");
        }
        hex
    }

    fn units(&self) -> Units {
        self.output.units.to_units()
    }

    /// Gap in compute units: meters in SI mode, the raw number otherwise.
    fn gap(&self) -> f64 {
        match self.output.units {
            UnitsChoice::Si => self.cavity.gap_um * MICRON,
            UnitsChoice::Natural => self.cavity.gap_um,
        }
    }

    fn half_side(&self) -> Option<f64> {
        self.cavity.half_side_um.map(|b| match self.output.units {
            UnitsChoice::Si => b * MICRON,
            UnitsChoice::Natural => b,
        })
    }

    fn chi_rad(&self) -> f64 {
        self.cavity.chi_deg.to_radians()
    }

    fn quadrature_spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.quadrature.rel_tol,
            abs_tol: self.quadrature.abs_tol,
            max_refinement_levels: self.quadrature.max_refinement_levels,
            phi_nodes: self.quadrature.phi_nodes,
            radial_map_scale: self.quadrature.radial_map_scale,
        }
    }

    /// The plate pair this mode computes with.
    fn plates(&self) -> Result<(PlateModel, PlateModel), CliError> {
        let uniaxial = || -> Result<(PlateModel, PlateModel), CliError> {
            let (ep, et) = (
                self.cavity.eps_par.expect("checked in resolve"),
                self.cavity.eps_perp.expect("checked in resolve"),
            );
            let m = UniaxialMedium::new(ep, et, 0.0).map_err(|e| config_err(format!("cavity: {e}")))?;
            Ok((PlateModel::Uniaxial(m), PlateModel::Uniaxial(m)))
        };
        let pa = (
            PlateModel::PerfectlyAnisotropic { axis_angle: 0.0 },
            PlateModel::PerfectlyAnisotropic { axis_angle: 0.0 },
        );
        match self.mode {
            Mode::Ideal | Mode::Finite => Ok((PlateModel::IdealConductor, PlateModel::IdealConductor)),
            Mode::Lifshitz => {
                let eps = self.cavity.eps.expect("checked in resolve");
                Ok((PlateModel::Isotropic { eps }, PlateModel::Isotropic { eps }))
            }
            Mode::Uniaxial => uniaxial(),
            Mode::PerfectAniso => Ok(pa),
            Mode::Torque | Mode::Sweep => {
                if self.cavity.eps_par.is_some() {
                    uniaxial()
                } else if let Some(eps) = self.cavity.eps {
                    Ok((PlateModel::Isotropic { eps }, PlateModel::Isotropic { eps }))
                } else if self.cavity.half_side_um.is_some()
                    || (matches!(self.mode, Mode::Sweep)
                        && matches!(self.sweep.as_ref().map(|s| s.variable), Some(SweepVariable::A)))
                {
                    // finite geometry and plain gap sweeps default to ideal walls
                    Ok((PlateModel::IdealConductor, PlateModel::IdealConductor))
                } else {
                    Ok(pa)
                }
            }
        }
    }

    fn cavity_config(&self, gap: f64, chi: f64) -> Result<CavityConfig, CliError> {
        let (plate1, plate2) = self.plates()?;
        Ok(CavityConfig {
            gap,
            eps_cavity: self.cavity.eps_cavity,
            plate1,
            plate2,
            chi,
            geometry: Geometry::Infinite,
        })
    }
}

// ---------------------------------------------------------------------------
// raw (file) configuration and resolution

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Option<Mode>,
    #[serde(default)]
    cavity: RawCavity,
    #[serde(default)]
    quadrature: RawQuadrature,
    #[serde(default)]
    sweep: RawSweep,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCavity {
    gap_um: Option<f64>,
    eps_cavity: Option<f64>,
    chi_deg: Option<f64>,
    eps: Option<f64>,
    eps_par: Option<f64>,
    eps_perp: Option<f64>,
    half_side_um: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_refinement_levels: Option<u32>,
    phi_nodes: Option<usize>,
    radial_map_scale: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: Option<SweepVariable>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
    spacing: Option<SweepSpacing>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<String>,
    format: Option<OutputFormat>,
    units: Option<UnitsChoice>,
}

/// Flag-level overrides, applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub gap_um: Option<f64>,
    pub chi_deg: Option<f64>,
    pub eps: Option<f64>,
    pub eps_par: Option<f64>,
    pub eps_perp: Option<f64>,
    pub eps_cavity: Option<f64>,
    pub half_side_um: Option<f64>,
    pub rel_tol: Option<f64>,
    pub out: Option<String>,
    pub format: Option<OutputFormat>,
    pub units: Option<UnitsChoice>,
    pub variable: Option<SweepVariable>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<SweepSpacing>,
}

/// Parse a config document on its own (the `mode` key is then required).
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string().trim().to_string()))?;
    let mode = raw.mode.ok_or_else(|| config_err("mode: required field is missing"))?;
    resolve(mode, raw, &Overrides::default())
}

fn require_positive(value: f64, field: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(config_err(format!("{field}: must be finite and > 0, got {value}")))
    }
}

/// Merge defaults, file values, and flag overrides into a validated
/// RunConfig. Every error message names the offending field path.
fn resolve(mode: Mode, raw: RawConfig, ov: &Overrides) -> Result<RunConfig, CliError> {
    if let Some(file_mode) = raw.mode {
        if file_mode != mode {
            return Err(config_err(format!(
                "mode: config file says '{file_mode}' but the subcommand is '{mode}'"
            )));
        }
    }

    let gap_um = ov
        .gap_um
        .or(raw.cavity.gap_um)
        .ok_or_else(|| config_err("cavity.gap_um: required field is missing"))?;
    require_positive(gap_um, "cavity.gap_um")?;
    let eps_cavity = ov.eps_cavity.or(raw.cavity.eps_cavity).unwrap_or(1.0);
    require_positive(eps_cavity, "cavity.eps_cavity")?;
    let chi_deg = ov.chi_deg.or(raw.cavity.chi_deg).unwrap_or(0.0);
    if !chi_deg.is_finite() {
        return Err(config_err(format!("cavity.chi_deg: must be finite, got {chi_deg}")));
    }
    let eps = ov.eps.or(raw.cavity.eps);
    let eps_par = ov.eps_par.or(raw.cavity.eps_par);
    let eps_perp = ov.eps_perp.or(raw.cavity.eps_perp);
    let half_side_um = ov.half_side_um.or(raw.cavity.half_side_um);
    for (value, field) in [
        (eps, "cavity.eps"),
        (eps_par, "cavity.eps_par"),
        (eps_perp, "cavity.eps_perp"),
        (half_side_um, "cavity.half_side_um"),
    ] {
        if let Some(v) = value {
            require_positive(v, field)?;
        }
    }
    if eps_par.is_some() != eps_perp.is_some() {
        return Err(config_err(
            "cavity.eps_par / cavity.eps_perp: both must be given together",
        ));
    }

    let quadrature = QuadratureFields {
        rel_tol: ov.rel_tol.or(raw.quadrature.rel_tol).unwrap_or(1e-6),
        abs_tol: raw.quadrature.abs_tol.unwrap_or(1e-14),
        max_refinement_levels: raw.quadrature.max_refinement_levels.unwrap_or(8),
        phi_nodes: raw.quadrature.phi_nodes.unwrap_or(16),
        radial_map_scale: raw.quadrature.radial_map_scale.unwrap_or(1.0),
    };
    let spec = QuadratureSpec {
        rel_tol: quadrature.rel_tol,
        abs_tol: quadrature.abs_tol,
        max_refinement_levels: quadrature.max_refinement_levels,
        phi_nodes: quadrature.phi_nodes,
        radial_map_scale: quadrature.radial_map_scale,
    };
    spec.validate().map_err(|e| config_err(format!("quadrature: {e}")))?;

    let sweep = if matches!(mode, Mode::Sweep) {
        let variable = ov
            .variable
            .or(raw.sweep.variable)
            .ok_or_else(|| config_err("sweep.variable: required field is missing"))?;
        let start = ov
            .start
            .or(raw.sweep.start)
            .ok_or_else(|| config_err("sweep.start: required field is missing"))?;
        let stop = ov
            .stop
            .or(raw.sweep.stop)
            .ok_or_else(|| config_err("sweep.stop: required field is missing"))?;
        let points = ov
            .points
            .or(raw.sweep.points)
            .ok_or_else(|| config_err("sweep.points: required field is missing"))?;
        let spacing = ov.spacing.or(raw.sweep.spacing).unwrap_or(SweepSpacing::Linear);
        if points < 2 {
            return Err(config_err(format!("sweep.points: must be ≥ 2, got {points}")));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(config_err("sweep.start / sweep.stop: must be finite"));
        }
        let needs_positive =
            matches!(variable, SweepVariable::A | SweepVariable::BOverA) || matches!(spacing, SweepSpacing::Log);
        if needs_positive && (start <= 0.0 || stop <= 0.0) {
            return Err(config_err(format!(
                "sweep.start / sweep.stop: must be > 0 for this variable/spacing, got {start} and {stop}"
            )));
        }
        Some(SweepFields {
            variable,
            start,
            stop,
            points,
            spacing,
        })
    } else {
        None
    };

    let output = OutputFields {
        path: ov.out.clone().or(raw.output.path),
        format: ov.format.or(raw.output.format).unwrap_or(OutputFormat::Csv),
        units: ov.units.or(raw.output.units).unwrap_or(UnitsChoice::Si),
    };

    // mode-specific requirements and scope checks
    let reject = |given: Option<f64>, field: &str| -> Result<(), CliError> {
        if given.is_some() {
            Err(config_err(format!("{field}: not used by '{mode}' mode")))
        } else {
            Ok(())
        }
    };
    match mode {
        Mode::Ideal | Mode::PerfectAniso => {
            reject(eps, "cavity.eps")?;
            reject(eps_par, "cavity.eps_par")?;
            reject(half_side_um, "cavity.half_side_um")?;
        }
        Mode::Lifshitz => {
            if eps.is_none() {
                return Err(config_err("cavity.eps: required for 'lifshitz' mode"));
            }
            reject(eps_par, "cavity.eps_par")?;
            reject(half_side_um, "cavity.half_side_um")?;
        }
        Mode::Uniaxial => {
            if eps_par.is_none() {
                return Err(config_err(
                    "cavity.eps_par, cavity.eps_perp: required for 'uniaxial' mode",
                ));
            }
            reject(eps, "cavity.eps")?;
            reject(half_side_um, "cavity.half_side_um")?;
        }
        Mode::Finite => {
            if half_side_um.is_none() {
                return Err(config_err("cavity.half_side_um: required for 'finite' mode"));
            }
            reject(eps, "cavity.eps")?;
            reject(eps_par, "cavity.eps_par")?;
        }
        Mode::Torque => {
            // anisotropic by construction: uniaxial pair if given, else
            // perfectly anisotropic plates
            reject(eps, "cavity.eps")?;
            reject(half_side_um, "cavity.half_side_um")?;
        }
        Mode::Sweep => {
            let variable = sweep.as_ref().expect("sweep present in sweep mode").variable;
            match variable {
                SweepVariable::BOverA => {
                    if half_side_um.is_some() {
                        return Err(config_err(
                            "cavity.half_side_um: fixed by the swept b/a ratio; remove it for b_over_a sweeps",
                        ));
                    }
                    reject(eps, "cavity.eps")?;
                    reject(eps_par, "cavity.eps_par")?;
                }
                SweepVariable::A => {
                    if half_side_um.is_some() && (eps.is_some() || eps_par.is_some()) {
                        return Err(config_err(
                            "cavity.half_side_um: finite-geometry sweeps support ideal conductors only",
                        ));
                    }
                }
                SweepVariable::Chi => {
                    reject(half_side_um, "cavity.half_side_um")?;
                    if eps.is_some() {
                        return Err(config_err(
                            "cavity.eps: energy is independent of chi for isotropic plates; \
                             give eps_par/eps_perp for uniaxial plates or neither for perfectly \
                             anisotropic ones",
                        ));
                    }
                }
            }
        }
    }

    let cfg = RunConfig {
        mode,
        cavity: CavityFields {
            gap_um,
            eps_cavity,
            chi_deg,
            eps,
            eps_par,
            eps_perp,
            half_side_um,
        },
        quadrature,
        sweep,
        output,
    };
    // the perfectly anisotropic closed form assumes a vacuum cavity
    let (p1, _) = cfg.plates()?;
    if matches!(p1, PlateModel::PerfectlyAnisotropic { .. }) && cfg.cavity.eps_cavity != 1.0 {
        return Err(config_err(
            "cavity.eps_cavity: must be 1 for perfectly anisotropic plates",
        ));
    }
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// computation → table

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    F(f64),
    U(u64),
    S(&'static str),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(v) => format!("{v:.16e}"),
            Cell::U(n) => n.to_string(),
            Cell::S(s) => (*s).to_string(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::F(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .expect("tables never contain NaN"),
            Cell::U(n) => serde_json::Value::from(*n),
            Cell::S(s) => serde_json::Value::from(*s),
        }
    }
}

struct Artifact {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    summaries: Vec<String>,
    /// Hard per-row failures. Rows are dropped, the run continues, and the
    /// process exits 3 after writing the table.
    aborted: Vec<String>,
    /// Forces exit code 3 even when every row was written: set for a
    /// single-point run whose quadrature certificate failed (the flagged
    /// partial is still written) and for sweeps with aborted rows. Flagged
    /// rows inside an otherwise healthy sweep do not fail the run.
    computational_failure: bool,
}

/// Convert an op result into (value, error, evals, flagged): a NotConverged
/// certificate becomes a flagged partial instead of a hard failure.
fn value_or_flagged(res: Result<EnergyResult, CasimirError>) -> Result<(f64, f64, u64, bool), CasimirError> {
    match res {
        Ok(e) => Ok((e.value, e.error_estimate, e.evaluations, false)),
        Err(CasimirError::NotConverged {
            partial,
            error_estimate,
            evaluations,
            ..
        }) => Ok((partial, error_estimate, evaluations, true)),
        Err(other) => Err(other),
    }
}

fn status_cell(flagged: bool) -> Cell {
    Cell::S(if flagged { "flagged" } else { "ok" })
}

/// energy / pressure / optional torque / ratio row for an infinite cavity.
fn infinite_row(
    cfg: &RunConfig,
    gap: f64,
    chi: f64,
    with_torque: bool,
) -> Result<(Vec<Cell>, bool), CasimirError> {
    let cavity = cfg
        .cavity_config(gap, chi)
        .map_err(|e| CasimirError::invalid(e.to_string()))?;
    let spec = cfg.quadrature_spec();
    let units = cfg.units();
    let (e_val, e_err, e_evals, e_flag) = value_or_flagged(energy_per_area(&cavity, &spec, units))?;
    let (p_val, _, _, p_flag) = value_or_flagged(pressure(&cavity, &spec, units))?;
    let e0 = energy_ideal_closed(gap, units)?.value;
    let mut cells = vec![Cell::F(e_val), Cell::F(p_val)];
    let flagged = e_flag || p_flag;
    if with_torque {
        // no flagged fallback here: a NotConverged torque carries an
        // energy-units partial, which must not be written as a torque
        let t = torque_per_area(&cavity, &spec, units)?;
        cells.push(Cell::F(t.value));
    }
    cells.push(Cell::F(e_val / e0));
    cells.push(Cell::F(e_err));
    cells.push(Cell::U(e_evals));
    cells.push(status_cell(flagged));
    Ok((cells, flagged))
}

/// eta / total energy / infinite-wall reference row for finite plates.
fn finite_row(cfg: &RunConfig, gap: f64, half_side: f64) -> Result<(Vec<Cell>, bool), CasimirError> {
    let units = cfg.units();
    let c = half_side / gap;
    let (eta, _, _) = eta_with_error(c)?;
    let total = finite_plate_energy(gap, half_side, units)?;
    let wall = energy_ideal_closed(gap, units)?.value * 4.0 * half_side * half_side;
    Ok((
        vec![
            Cell::F(c),
            Cell::F(eta),
            Cell::F(total.value),
            Cell::F(wall),
            Cell::F(total.error_estimate),
            Cell::U(total.evaluations),
            status_cell(false),
        ],
        false,
    ))
}

fn push_summary(out: &mut Vec<String>, name: &str, value: f64, err: f64, unit: &str, evals: u64) {
    out.push(format!("{name} = {value:.16e} ± {err:.3e} {unit} ({evals} evaluations)"));
}

fn unit_label(units: UnitsChoice, quantity: &str) -> &'static str {
    match (units, quantity) {
        (UnitsChoice::Si, "energy") => "J/m^2",
        (UnitsChoice::Si, "pressure") => "J/m^3",
        (UnitsChoice::Si, "torque") => "J/(m^2 rad)",
        (UnitsChoice::Si, "total") => "J",
        _ => "(natural units)",
    }
}

fn single_point(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let units = cfg.output.units;
    let gap = cfg.gap();
    let chi = cfg.chi_rad();
    let spec = cfg.quadrature_spec();
    match cfg.mode {
        Mode::Ideal | Mode::Lifshitz | Mode::Uniaxial | Mode::PerfectAniso => {
            let with_torque = !matches!(cfg.mode, Mode::Ideal | Mode::Lifshitz);
            let mut columns = vec!["gap"];
            match cfg.mode {
                Mode::Lifshitz => columns.push("eps"),
                Mode::Uniaxial | Mode::PerfectAniso => columns.push("chi_rad"),
                _ => {}
            }
            columns.extend_from_slice(&["energy_per_area", "pressure"]);
            if with_torque {
                columns.push("torque_per_area");
            }
            columns.extend_from_slice(&["energy_ratio", "error_estimate", "evaluations", "status"]);

            let (cells, flagged) = infinite_row(cfg, gap, chi, with_torque).map_err(CliError::Compute)?;
            let mut row = vec![Cell::F(gap)];
            match cfg.mode {
                Mode::Lifshitz => row.push(Cell::F(cfg.cavity.eps.expect("validated"))),
                Mode::Uniaxial | Mode::PerfectAniso => row.push(Cell::F(chi)),
                _ => {}
            }
            row.extend(cells);

            let mut summaries = Vec::new();
            let energy_idx = columns.iter().position(|c| *c == "energy_per_area").expect("present");
            let err_idx = columns.iter().position(|c| *c == "error_estimate").expect("present");
            let evals_idx = columns.iter().position(|c| *c == "evaluations").expect("present");
            if let (Cell::F(v), Cell::F(err), Cell::U(n)) = (&row[energy_idx], &row[err_idx], &row[evals_idx]) {
                push_summary(&mut summaries, "energy_per_area", *v, *err, unit_label(units, "energy"), *n);
            }
            if let Cell::F(p) = &row[energy_idx + 1] {
                summaries.push(format!("pressure = {p:.16e} {}", unit_label(units, "pressure")));
            }
            if with_torque {
                if let Cell::F(t) = &row[energy_idx + 2] {
                    summaries.push(format!("torque_per_area = {t:.16e} {}", unit_label(units, "torque")));
                }
            }
            if flagged {
                summaries.push("warning: quadrature certificate not met; row flagged".to_string());
            }
            Ok(Artifact {
                columns,
                rows: vec![row],
                summaries,
                aborted: Vec::new(),
                computational_failure: flagged,
            })
        }
        Mode::Torque => {
            let cavity = cfg.cavity_config(gap, chi)?;
            let t = torque_per_area(&cavity, &spec, units.to_units()).map_err(CliError::Compute)?;
            let mut summaries = Vec::new();
            push_summary(
                &mut summaries,
                "torque_per_area",
                t.value,
                t.error_estimate,
                unit_label(units, "torque"),
                t.evaluations,
            );
            Ok(Artifact {
                columns: vec!["gap", "chi_rad", "torque_per_area", "error_estimate", "evaluations", "status"],
                rows: vec![vec![
                    Cell::F(gap),
                    Cell::F(chi),
                    Cell::F(t.value),
                    Cell::F(t.error_estimate),
                    Cell::U(t.evaluations),
                    status_cell(false),
                ]],
                summaries,
                aborted: Vec::new(),
                computational_failure: false,
            })
        }
        Mode::Finite => {
            let half_side = cfg.half_side().expect("validated");
            let (cells, _) = finite_row(cfg, gap, half_side).map_err(CliError::Compute)?;
            let mut row = vec![Cell::F(gap), Cell::F(half_side)];
            row.extend(cells);
            let summaries = match (&row[4], &row[5]) {
                (Cell::F(total), Cell::F(wall)) => vec![
                    format!("finite_plate_energy = {total:.16e} {}", unit_label(units, "total")),
                    format!("infinite_wall_reference = {wall:.16e} {}", unit_label(units, "total")),
                ],
                _ => Vec::new(),
            };
            Ok(Artifact {
                columns: vec![
                    "gap",
                    "half_side",
                    "b_over_a",
                    "eta",
                    "energy_total",
                    "ideal_times_area",
                    "error_estimate",
                    "evaluations",
                    "status",
                ],
                rows: vec![row],
                summaries,
                aborted: Vec::new(),
                computational_failure: false,
            })
        }
        Mode::Sweep => unreachable!("sweep handled separately"),
    }
}

fn sweep_grid(s: &SweepFields) -> Vec<f64> {
    let n = s.points;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match s.spacing {
                SweepSpacing::Linear => s.start + (s.stop - s.start) * t,
                SweepSpacing::Log => (s.start.ln() + (s.stop.ln() - s.start.ln()) * t).exp(),
            }
        })
        .collect()
}

fn sweep(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let s = cfg.sweep.as_ref().expect("validated");
    let grid = sweep_grid(s);
    let (plate1, _) = cfg.plates()?;
    let anisotropic = plate1.is_anisotropic();
    let finite_geometry = cfg.cavity.half_side_um.is_some() || matches!(s.variable, SweepVariable::BOverA);

    let columns: Vec<&'static str> = match (s.variable, finite_geometry) {
        (SweepVariable::Chi, _) => vec![
            "chi_rad",
            "energy_per_area",
            "pressure",
            "torque_per_area",
            "energy_ratio",
            "error_estimate",
            "evaluations",
            "status",
        ],
        (SweepVariable::A, false) => {
            let mut c = vec!["gap", "energy_per_area", "pressure"];
            if anisotropic {
                c.push("torque_per_area");
            }
            c.extend_from_slice(&["energy_ratio", "error_estimate", "evaluations", "status"]);
            c
        }
        (SweepVariable::A, true) => vec![
            "gap",
            "b_over_a",
            "eta",
            "energy_total",
            "ideal_times_area",
            "error_estimate",
            "evaluations",
            "status",
        ],
        (SweepVariable::BOverA, _) => vec![
            "b_over_a",
            "half_side",
            "eta",
            "energy_total",
            "ideal_times_area",
            "error_estimate",
            "evaluations",
            "status",
        ],
    };

    // each row is pure; evaluate concurrently, then assemble in sweep order
    let outcomes: Vec<Result<(Vec<Cell>, bool), String>> = grid
        .par_iter()
        .map(|&x| {
            let run = |gap: f64, chi: f64, leading: Vec<Cell>, with_torque: bool| {
                infinite_row(cfg, gap, chi, with_torque)
                    .map(|(cells, flagged)| {
                        let mut row = leading.clone();
                        row.extend(cells);
                        (row, flagged)
                    })
                    .map_err(|e| format!("at {x:.6e}: {e}"))
            };
            match (s.variable, finite_geometry) {
                (SweepVariable::Chi, _) => {
                    let chi = x.to_radians();
                    run(cfg.gap(), chi, vec![Cell::F(chi)], true)
                }
                (SweepVariable::A, false) => {
                    let gap = match cfg.output.units {
                        UnitsChoice::Si => x * MICRON,
                        UnitsChoice::Natural => x,
                    };
                    run(gap, cfg.chi_rad(), vec![Cell::F(gap)], anisotropic)
                }
                (SweepVariable::A, true) => {
                    let gap = match cfg.output.units {
                        UnitsChoice::Si => x * MICRON,
                        UnitsChoice::Natural => x,
                    };
                    let half_side = cfg.half_side().expect("validated");
                    finite_row(cfg, gap, half_side)
                        .map(|(cells, flagged)| {
                            let mut row = vec![Cell::F(gap)];
                            row.extend(cells);
                            (row, flagged)
                        })
                        .map_err(|e| format!("at {x:.6e}: {e}"))
                }
                (SweepVariable::BOverA, _) => {
                    let gap = cfg.gap();
                    let half_side = x * gap;
                    finite_row(cfg, gap, half_side)
                        .map(|(cells, flagged)| {
                            // finite_row already leads with b_over_a
                            let mut row = Vec::with_capacity(cells.len() + 1);
                            row.push(cells[0].clone());
                            row.push(Cell::F(half_side));
                            row.extend(cells.into_iter().skip(1));
                            (row, flagged)
                        })
                        .map_err(|e| format!("at {x:.6e}: {e}"))
                }
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(grid.len());
    let mut aborted = Vec::new();
    let mut flagged_count = 0usize;
    for outcome in outcomes {
        match outcome {
            Ok((row, flagged)) => {
                flagged_count += usize::from(flagged);
                rows.push(row);
            }
            Err(reason) => aborted.push(reason),
        }
    }
    let summaries = vec![format!(
        "sweep over {}: {} points computed, {} flagged, {} aborted",
        match s.variable {
            SweepVariable::A => "a",
            SweepVariable::Chi => "chi",
            SweepVariable::BOverA => "b_over_a",
        },
        rows.len(),
        flagged_count,
        aborted.len()
    )];
    let computational_failure = !aborted.is_empty();
    Ok(Artifact {
        columns,
        rows,
        summaries,
        aborted,
        computational_failure,
    })
}

// ---------------------------------------------------------------------------
// rendering

fn render_csv(cfg: &RunConfig, artifact: &Artifact) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# casimir {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# mode: {}", cfg.mode);
    let _ = writeln!(s, "# config_hash: {}", cfg.config_hash());
    let _ = writeln!(s, "# units: {}", cfg.output.units.name());
    let _ = writeln!(s, "# rel_tol: {:.16e}", cfg.quadrature.rel_tol);
    let _ = writeln!(s, "# columns: {}", artifact.columns.join(","));
    for row in &artifact.rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        let _ = writeln!(s, "{}", line.join(","));
    }
    s
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    tool: &'static str,
    version: &'static str,
    mode: String,
    config_hash: String,
    units: &'static str,
    rel_tol: f64,
    columns: &'a [&'static str],
    rows: Vec<Vec<serde_json::Value>>,
}

fn render_json(cfg: &RunConfig, artifact: &Artifact) -> String {
    let doc = JsonDocument {
        tool: "casimir",
        version: env!("CARGO_PKG_VERSION"),
        mode: cfg.mode.to_string(),
        config_hash: cfg.config_hash(),
        units: cfg.output.units.name(),
        rel_tol: cfg.quadrature.rel_tol,
        columns: &artifact.columns,
        rows: artifact
            .rows
            .iter()
            .map(|row| row.iter().map(Cell::to_json).collect())
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document is serializable");
    text.push('\n');
    text
}

/// Run a resolved config end to end and write the artifact. Returns the
/// process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let artifact = match cfg.mode {
        Mode::Sweep => sweep(cfg),
        _ => single_point(cfg),
    };
    let artifact = match artifact {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let rendered = match cfg.output.format {
        OutputFormat::Csv => render_csv(cfg, &artifact),
        OutputFormat::Json => render_json(cfg, &artifact),
    };

    // table destination decides where the human-readable summary goes:
    // file → summaries on stdout; stdout → summaries on stderr
    let summary_to_stdout = cfg.output.path.is_some();
    match &cfg.output.path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                eprintln!("i/o error: cannot write {path}: {e}");
                return 4;
            }
        }
        None => print!("{rendered}"),
    }
    for line in &artifact.summaries {
        if summary_to_stdout {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    for reason in &artifact.aborted {
        eprintln!("row aborted: {reason}");
    }
    if artifact.computational_failure {
        3
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// argument parsing

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir cavity energies, pressures, and alignment torques"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal-conductor plates
    Ideal(CommonArgs),
    /// Isotropic dielectric plates (requires --eps)
    Lifshitz(CommonArgs),
    /// Uniaxial plates (requires --eps-par and --eps-perp)
    Uniaxial(CommonArgs),
    /// Perfectly anisotropic plates
    #[command(name = "perfect-aniso")]
    PerfectAniso(CommonArgs),
    /// Finite square plates (requires --half-side-um)
    Finite(CommonArgs),
    /// Alignment torque (uniaxial plates if --eps-par/--eps-perp, else
    /// perfectly anisotropic)
    Torque(CommonArgs),
    /// Sweep a, chi, or b/a and emit one row per point
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// TOML config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Gap in microns (SI) or the dimensionless gap (natural units)
    #[arg(long)]
    gap_um: Option<f64>,
    /// Misalignment of plate 2, degrees
    #[arg(long)]
    chi_deg: Option<f64>,
    /// Isotropic plate permittivity
    #[arg(long)]
    eps: Option<f64>,
    /// Permittivity along the optical axis
    #[arg(long)]
    eps_par: Option<f64>,
    /// Permittivity perpendicular to the optical axis
    #[arg(long)]
    eps_perp: Option<f64>,
    /// Cavity permittivity (default 1)
    #[arg(long)]
    eps_cavity: Option<f64>,
    /// Plate half side b in microns (finite geometry)
    #[arg(long)]
    half_side_um: Option<f64>,
    /// Relative quadrature tolerance (default 1e-6)
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Unit system
    #[arg(long, value_enum)]
    units: Option<UnitsChoice>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// What to sweep: a (gap), chi (degrees), or b-over-a
    #[arg(long, value_enum)]
    variable: Option<SweepVariable>,
    /// First grid value (microns for a, degrees for chi, ratio for b-over-a)
    #[arg(long)]
    start: Option<f64>,
    /// Last grid value
    #[arg(long)]
    stop: Option<f64>,
    /// Grid size (≥ 2)
    #[arg(long)]
    points: Option<usize>,
    /// Grid spacing
    #[arg(long, value_enum)]
    spacing: Option<SweepSpacing>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            gap_um: self.gap_um,
            chi_deg: self.chi_deg,
            eps: self.eps,
            eps_par: self.eps_par,
            eps_perp: self.eps_perp,
            eps_cavity: self.eps_cavity,
            half_side_um: self.half_side_um,
            rel_tol: self.rel_tol,
            out: self.out.as_ref().map(|p| p.display().to_string()),
            format: self.format,
            units: self.units,
            ..Overrides::default()
        }
    }
}

fn load_raw(path: Option<&PathBuf>) -> Result<RawConfig, CliError> {
    let Some(path) = path else {
        return Ok(RawConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| config_err(e.to_string().trim().to_string()))
}

/// Parse the process arguments, run, and return the exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let (mode, common, overrides) = match &cli.command {
        Command::Ideal(a) => (Mode::Ideal, a, a.overrides()),
        Command::Lifshitz(a) => (Mode::Lifshitz, a, a.overrides()),
        Command::Uniaxial(a) => (Mode::Uniaxial, a, a.overrides()),
        Command::PerfectAniso(a) => (Mode::PerfectAniso, a, a.overrides()),
        Command::Finite(a) => (Mode::Finite, a, a.overrides()),
        Command::Torque(a) => (Mode::Torque, a, a.overrides()),
        Command::Sweep(s) => {
            let mut ov = s.common.overrides();
            ov.variable = s.variable;
            ov.start = s.start;
            ov.stop = s.stop;
            ov.points = s.points;
            ov.spacing = s.spacing;
            (Mode::Sweep, &s.common, ov)
        }
    };
    let raw = match load_raw(common.config.as_ref()) {
        Ok(raw) => raw,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let cfg = match resolve(mode, raw, &overrides) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    run(&cfg)
}
