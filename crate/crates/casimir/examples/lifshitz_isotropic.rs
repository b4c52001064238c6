//! Isotropic dielectric plates: reduction of the interaction with
//! decreasing permittivity, and recovery of the ideal-conductor value as
//! eps grows.
//!
//! Run with `cargo run --release --example lifshitz_isotropic`.

use casimir::energy::{
    energy_ideal_closed, energy_per_area, CavityConfig, Geometry, QuadratureSpec, Units,
};
use casimir::media::PlateModel;

fn main() -> casimir::Result<()> {
    let quad = QuadratureSpec::default();
    let gap = 1.0;
    let e0 = energy_ideal_closed(gap, Units::Natural)?.value;

    println!("eps          E/A (natural)            E/E_ideal");
    for eps in [1.5, 2.0, 5.0, 10.0, 100.0, 1e4, 1e6] {
        let cfg = CavityConfig {
            gap,
            eps_cavity: 1.0,
            plate1: PlateModel::Isotropic { eps },
            plate2: PlateModel::Isotropic { eps },
            chi: 0.0,
            geometry: Geometry::Infinite,
        };
        let e = energy_per_area(&cfg, &quad, Units::Natural)?;
        println!("{eps:9.1e}   {:+.15e}   {:.6}", e.value, e.value / e0);
    }
    println!();
    println!("E/E_ideal -> 1 from below as eps -> infinity; at eps = 1 the");
    println!("plates match the cavity and the interaction vanishes.");
    Ok(())
}
