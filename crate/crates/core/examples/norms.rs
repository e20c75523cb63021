//! Besov, mixed space-time and conormal norms of a free wave.

use bo_lab::ensemble::{random_real_field, rng};
use bo_lab::norms::{besov_norm, mixed_norm, xsbq_norm, y_constituents, FreeWave, NormSpec, Taper, Windowed};
use bo_lab::spectral::Grid1D;

fn main() -> bo_lab::Result<()> {
    let grid = Grid1D::new(128, 2.0 * std::f64::consts::PI)?;
    let u0 = random_real_field(grid, 4, 20, Some(1.0), &mut rng(1));
    println!("B^(1/2,1)_2 = {:.4}", besov_norm(&u0, &NormSpec::Besov { s: 0.5, p: 2.0, q: 1.0 })?);

    let wave = FreeWave::uniform(&u0, 0.0, 1e-3, 401);
    let inf = f64::INFINITY;
    let strichartz = mixed_norm(&wave, &NormSpec::Lb { rho: 4.0, s: 0.0, p: inf, q: 1.0 })?;
    println!("L^4_t B^(0,1)_inf = {strichartz:.4}");
    println!("Y^(1/4) constituents {:?}", y_constituents(&wave, 0.25)?);

    let windowed = Windowed::new(&wave, Taper::new(0.0, 0.4)?);
    let x = xsbq_norm(&windowed, 0.0, 0.5, 1.0)?;
    println!("X^(0,1/2,1) = {:.4} over {} blocks", x.value, x.blocks.len());
    Ok(())
}
