//! Continuity of the flow map: difference norms along an epsilon ladder.

use bo_lab::ensemble::{random_real_field, rng};
use bo_lab::estimates::{flow_holder_experiment, persistence_run};
use bo_lab::solver::SolverConfig;
use bo_lab::spectral::Grid1D;

fn main() -> bo_lab::Result<()> {
    let grid = Grid1D::new(128, 2.0 * std::f64::consts::PI)?;
    let cfg = SolverConfig::new(grid, 1e-3, 1.0);
    let u0 = random_real_field(grid, 1, 3, Some(0.5), &mut rng(2));
    let p = random_real_field(grid, 1, 5, Some(1.0), &mut rng(3));
    let report = flow_holder_experiment(&cfg, &u0, &p, &[1e-1, 1e-2, 1e-3, 1e-4])?;
    for fit in &report.fits {
        println!("{:<18} slope {:.4} monotone {}", fit.norm, fit.slope, fit.monotone());
    }
    let pers = persistence_run(&cfg, &u0)?;
    println!("sup_t ||u(t)||_(H^1/2) / ||u0||_(H^1/2) = {:.4}", pers.max_ratio);
    Ok(())
}
