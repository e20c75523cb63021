//! Periodic soliton: conservation ledger, measured speed, and a two-soliton collision.

use bo_lab::solver::{locate_peaks, run, two_soliton_collision, PeriodicSoliton, SolverConfig};
use bo_lab::spectral::Grid1D;

fn main() -> bo_lab::Result<()> {
    let grid = Grid1D::new(1024, 100.0)?;
    let sol = PeriodicSoliton::new(1.0, 50.0, grid.length())?;
    let mut cfg = SolverConfig::new(grid, 0.0025, 5.0);
    cfg.record_every = 200;
    let out = run(&cfg, &sol.sample(grid, 0.0)?)?;
    println!("mass drift {:.2e}, hamiltonian drift {:.2e}", out.ledger.mass_drift(), out.ledger.hamiltonian_drift());

    let first = locate_peaks(out.trajectory.first(), sol.polarity(), 1)[0];
    let last = locate_peaks(out.trajectory.last(), sol.polarity(), 1)[0];
    let speed = (last.0 - first.0) / cfg.t_end;
    println!("speed {speed:.6} (exact {:.6}), height {:.6} (exact {:.6})", sol.speed(), last.1, -sol.value(sol.x0, 0.0));

    let grid = Grid1D::new(1024, 160.0)?;
    let mut cfg = SolverConfig::new(grid, 0.005, 120.0);
    cfg.record_every = 100;
    let report = two_soliton_collision(&cfg, 1.0, 0.5, 30.0, 5.0)?;
    for (i, (b, a)) in report.before.iter().zip(&report.after).enumerate() {
        println!("soliton {i}: height {:.4} -> {:.4}, speed {:.4} -> {:.4}", b.0, a.0, b.1, a.1);
    }
    println!("largest relative change across the collision {:.2e}", report.max_relative_change());
    Ok(())
}
