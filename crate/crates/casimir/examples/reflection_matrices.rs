//! Reflection matrices of a uniaxial wall: stable closed forms against the
//! direct boundary-condition solve, and the isotropic / perfectly
//! anisotropic limits.
//!
//! Run with `cargo run --release --example reflection_matrices`.

use casimir::media::{PlateModel, SpectralPoint, UniaxialMedium};
use casimir::reflection::{
    boundary_solve_reflection, reflect_perfectly_anisotropic, reflect_uniaxial_closed,
    reflection_matrix,
};

fn print_matrix(label: &str, m: [[f64; 2]; 2]) {
    println!("{label}");
    println!("  [{:+.12e}  {:+.12e}]", m[0][0], m[0][1]);
    println!("  [{:+.12e}  {:+.12e}]", m[1][0], m[1][1]);
}

fn main() -> casimir::Result<()> {
    let p = SpectralPoint::new(0.7, 1.3, 0.95)?;
    let medium = UniaxialMedium::new(2.5, 7.0, 0.0)?;

    let closed = reflect_uniaxial_closed(p, &medium, 1.0, 0.0)?;
    let solved = boundary_solve_reflection(p, &PlateModel::Uniaxial(medium), 1.0, 0.0)?;
    print_matrix("uniaxial closed form (rows: outgoing E/M, cols: incident E/M):", closed.to_array());
    print_matrix("direct boundary solve:", solved.to_array());
    println!(
        "max |closed - solved| = {:.2e}",
        [
            (closed.r_ee - solved.r_ee).abs(),
            (closed.r_em - solved.r_em).abs(),
            (closed.r_me - solved.r_me).abs(),
            (closed.r_mm - solved.r_mm).abs(),
        ]
        .into_iter()
        .fold(0.0_f64, f64::max)
    );
    println!();

    // the closed forms collapse to Fresnel coefficients for eps_par = eps_perp
    let iso = reflection_matrix(p, &PlateModel::Isotropic { eps: 4.0 }, 1.0, 0.0)?;
    print_matrix("isotropic plate, eps = 4 (off-diagonal entries vanish):", iso.to_array());
    println!();

    // infinite in-plane contrast: one principal permittivity huge
    let near_pa = reflect_uniaxial_closed(p, &UniaxialMedium::new(1.0, 1e8, 0.0)?, 1.0, 0.0)?;
    let pa = reflect_perfectly_anisotropic(p, 0.0)?;
    print_matrix("uniaxial with eps_perp = 1e8:", near_pa.to_array());
    print_matrix("perfectly anisotropic closed form:", pa.to_array());
    Ok(())
}
