//! Ideal-conductor cavity: closed form vs full quadrature.
//!
//! Run with `cargo run --release --example ideal_energy`.

use casimir::energy::{
    energy_ideal_closed, energy_per_area, CavityConfig, Geometry, QuadratureSpec, Units,
};
use casimir::media::PlateModel;

fn main() -> casimir::Result<()> {
    let quad = QuadratureSpec::default();

    println!("gap [um]   closed form [J/m^2]      quadrature [J/m^2]       rel. diff");
    for gap_um in [0.1, 0.5, 1.0, 5.0] {
        let gap = gap_um * 1e-6;
        let closed = energy_ideal_closed(gap, Units::Si)?;
        let cfg = CavityConfig {
            gap,
            eps_cavity: 1.0,
            plate1: PlateModel::IdealConductor,
            plate2: PlateModel::IdealConductor,
            chi: 0.0,
            geometry: Geometry::Infinite,
        };
        let computed = energy_per_area(&cfg, &quad, Units::Si)?;
        println!(
            "{gap_um:7.2}    {:+.15e}   {:+.15e}   {:.2e}",
            closed.value,
            computed.value,
            ((computed.value - closed.value) / closed.value).abs()
        );
    }

    // natural units: the gap enters only through the overall 1/a^3
    let e1 = energy_per_area(
        &CavityConfig {
            gap: 1.0,
            eps_cavity: 1.0,
            plate1: PlateModel::IdealConductor,
            plate2: PlateModel::IdealConductor,
            chi: 0.0,
            geometry: Geometry::Infinite,
        },
        &quad,
        Units::Natural,
    )?;
    println!();
    println!("natural units, unit gap: E/A = {:+.15e}", e1.value);
    println!("-pi^2/720              = {:+.15e}", -std::f64::consts::PI.powi(2) / 720.0);
    Ok(())
}
