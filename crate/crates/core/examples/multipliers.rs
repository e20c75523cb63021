//! Fourier multipliers on the torus: Hilbert transform, derivatives, free evolution.

use bo_lab::spectral::{derivative, dispersion_provenance, fractional_derivative, free_evolution, hilbert, Field, Grid1D};

fn main() -> bo_lab::Result<()> {
    let grid = Grid1D::new(64, 2.0 * std::f64::consts::PI)?;
    let u = Field::from_fn(grid, |x| (3.0 * x).cos() + 0.5 * (5.0 * x).sin());

    // H cos = sin, H sin = -cos
    let expected = Field::from_fn(grid, |x| (3.0 * x).sin() - 0.5 * (5.0 * x).cos());
    println!("|Hu - expected| = {:.1e}", hilbert(&u).distance(&expected)?);

    // |D| = H d/dx
    let d1 = fractional_derivative(&u, 1.0)?;
    println!("| |D|u - H u' | = {:.1e}", d1.distance(&hilbert(&derivative(&u, 1)))?);

    // the free flow is unitary and a group
    let a = free_evolution(&free_evolution(&u, 0.3), 0.4);
    let b = free_evolution(&u, 0.7);
    println!("group law error {:.1e}, norm change {:.1e}", a.distance(&b)?, (b.norm_l2() - u.norm_l2()).abs());
    println!("{}", dispersion_provenance());
    Ok(())
}
