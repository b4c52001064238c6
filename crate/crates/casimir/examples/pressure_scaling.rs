//! Normal pressure between plates: the a^-4 scaling law, the sign
//! convention (negative = attraction), and the gap independence of the
//! normalized energy E/E_ideal for constant-permittivity walls.
//!
//! Run with `cargo run --release --example pressure_scaling`.

use casimir::energy::{
    energy_ideal_closed, energy_per_area, pressure, CavityConfig, Geometry, QuadratureSpec, Units,
};
use casimir::media::PlateModel;

fn main() -> casimir::Result<()> {
    let quad = QuadratureSpec::default();
    let plate = PlateModel::Isotropic { eps: 10.0 };

    println!("gap a [um]   P [J/m^3]          P * a^4 [J m]");
    for gap_um in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let gap = gap_um * 1e-6;
        let cfg = CavityConfig {
            gap,
            eps_cavity: 1.0,
            plate1: plate,
            plate2: plate,
            chi: 0.0,
            geometry: Geometry::Infinite,
        };
        let p = pressure(&cfg, &quad, Units::Si)?;
        println!("{gap_um:8.2}     {:+.6e}      {:+.9e}", p.value, p.value * gap.powi(4));
    }
    println!();
    println!("P * a^4 is constant: constant-permittivity walls scale like the");
    println!("ideal result. For the same reason E/E_ideal is gap independent:");
    println!();

    println!("gap a [um]   E/E_ideal");
    for gap_um in [0.25, 1.0, 4.0] {
        let gap = gap_um * 1e-6;
        let cfg = CavityConfig {
            gap,
            eps_cavity: 1.0,
            plate1: plate,
            plate2: plate,
            chi: 0.0,
            geometry: Geometry::Infinite,
        };
        let e = energy_per_area(&cfg, &quad, Units::Si)?;
        let e0 = energy_ideal_closed(gap, Units::Si)?.value;
        println!("{gap_um:8.2}     {:.12}", e.value / e0);
    }
    println!();
    println!("ideal plates at a = 1 um: P = {:+.4e} J/m^3", {
        let cfg = CavityConfig {
            gap: 1e-6,
            eps_cavity: 1.0,
            plate1: PlateModel::IdealConductor,
            plate2: PlateModel::IdealConductor,
            chi: 0.0,
            geometry: Geometry::Infinite,
        };
        pressure(&cfg, &quad, Units::Si)?.value
    });
    println!("(-pi^2/240 hbar c / a^4 = -1.3001e-3 J/m^3; attraction)");
    Ok(())
}
