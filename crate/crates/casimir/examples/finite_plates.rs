//! Finite square plates: the view-factor efficiency eta(b/a) and the total
//! interaction energy of 10 um x 10 um ideal plates across six decades of
//! separation.
//!
//! Run with `cargo run --release --example finite_plates`.

use casimir::energy::{energy_ideal_closed, Units};
use casimir::geometry::{finite_plate_energy, finite_plate_efficiency, EtaTable};

fn main() -> casimir::Result<()> {
    println!("b/a        eta          1 - eta");
    for c in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1000.0] {
        let eta = finite_plate_efficiency(c)?;
        println!("{c:8.2}   {eta:.8}   {:.3e}", 1.0 - eta);
    }
    println!();
    println!("eta -> (4/pi) (b/a)^2 for small plates and -> 1 for large ones,");
    println!("so E_total crosses over from a^-4 b^4 to the wall law a^-3 b^2.");
    println!();

    // precomputed table: same numbers, microseconds per lookup
    let table = EtaTable::standard()?;
    let direct = finite_plate_efficiency(3.0)?;
    println!(
        "table vs direct at b/a = 3:  {:+.10e} vs {:+.10e}",
        table.eval(3.0)?,
        direct
    );
    println!();

    let b = 5.0e-6; // half side of a 10 um x 10 um plate
    println!("gap a [um]   E_total [J]        E_wall [J]         local slope dlnE/dlna");
    let mut previous: Option<(f64, f64)> = None;
    for i in 0..=6 {
        let a = 1e-7 * 10f64.powf(i as f64 / 2.0);
        let total = finite_plate_energy(a, b, Units::Si)?;
        let wall = energy_ideal_closed(a, Units::Si)?.value * (2.0 * b) * (2.0 * b);
        let slope = previous
            .map(|(a0, e0)| ((total.value / e0).ln()) / ((a / a0).ln()))
            .map(|s| format!("{s:+.3}"))
            .unwrap_or_default();
        println!(
            "{:9.3}    {:+.6e}      {:+.6e}      {slope}",
            a * 1e6,
            total.value,
            wall
        );
        previous = Some((a, total.value));
    }
    Ok(())
}
