//! Gauge transform of a small solution: residuals, norm comparison, inverse.

use bo_lab::gauge::{gauge_check, renorm_residual, GaugeEnsemble, GaugeSettings};
use bo_lab::spectral::Grid1D;

fn main() -> bo_lab::Result<()> {
    let ens = GaugeEnsemble {
        grid: Grid1D::new(256, 2.0 * std::f64::consts::PI)?,
        dt: 1e-3,
        t_end: 0.2,
        record_every: 1,
        band: (1, 8),
        size: 0.1,
        solver_dealias: 0.5,
    };
    let settings = GaugeSettings::default();
    for seed in 0..3 {
        let c = gauge_check(&ens, &settings, seed, 1e-12)?;
        println!(
            "seed {seed}: d_x U {:.1e}, d_t U {:.1e}, round trip {:.1e} in {:.1} sweeps",
            c.dx_residual, c.dt_residual, c.round_trip, c.mean_sweeps
        );
        println!(
            "  ||w_j|| / ((1 - ||u0||) ||u_j||) >= {:.4}, ||w_j|| / ||u_j|| - 1 <= {:.1e}",
            c.equivalence.lower_margin, c.equivalence.upper_excess
        );
        let r = renorm_residual(&c.pair, 2)?;
        println!("  renormalized equation residual on shell 2: {:.1e}", r.residual);
    }
    Ok(())
}
