//! Two-soliton collision: both waves must re-emerge with their speeds and heights.

use num_complex::Complex64;

use super::integrator::{run, SolverConfig};
use super::soliton::PeriodicSoliton;
use crate::error::{Error, Result};
use crate::spectral::Field;

/// Value and first two derivatives of the trigonometric interpolant at `x`.
fn interpolant(u: &Field, x: f64) -> (f64, f64, f64) {
    let grid = u.grid();
    let mut acc = [Complex64::new(0.0, 0.0); 3];
    for (k, c) in u.spectrum().iter().enumerate() {
        if grid.is_nyquist(k) {
            continue;
        }
        let xi = grid.wavenumber(k);
        let e = c * Complex64::from_polar(1.0, xi * x);
        acc[0] += e;
        acc[1] += e * Complex64::new(0.0, xi);
        acc[2] -= e * xi * xi;
    }
    (acc[0].re, acc[1].re, acc[2].re)
}

/// Extrema of `polarity * u`: the `count` largest local maxima on the grid, refined by
/// Newton steps on the interpolant. Returns `(position, polarity * value)`.
pub fn locate_peaks(u: &Field, polarity: f64, count: usize) -> Vec<(f64, f64)> {
    let grid = u.grid();
    let n = grid.n_points();
    let vals: Vec<f64> = u.values().iter().map(|v| polarity * v.re).collect();
    let mut cands: Vec<usize> = (0..n).filter(|&i| vals[i] > vals[(i + n - 1) % n] && vals[i] >= vals[(i + 1) % n]).collect();
    cands.sort_by(|a, b| vals[*b].total_cmp(&vals[*a]));
    cands
        .into_iter()
        .take(count)
        .map(|i| {
            let mut x = grid.x(i);
            for _ in 0..8 {
                let (_, d1, d2) = interpolant(u, x);
                if d2 == 0.0 {
                    break;
                }
                let step = (d1 / d2).clamp(-grid.dx(), grid.dx());
                x -= step;
            }
            let x = x.rem_euclid(grid.length());
            (x, polarity * interpolant(u, x).0)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionReport {
    /// Per soliton (fast first): `(height, speed)` before and after the collision.
    pub before: [(f64, f64); 2],
    pub after: [(f64, f64); 2],
    /// Height and speed of each soliton alone on the same torus.
    pub reference: [(f64, f64); 2],
}

impl CollisionReport {
    /// Largest relative change of a height or speed across the collision.
    pub fn max_relative_change(&self) -> f64 {
        self.before.iter().zip(&self.after).flat_map(|(b, a)| [((a.0 - b.0) / b.0).abs(), ((a.1 - b.1) / b.1).abs()]).fold(0.0, f64::max)
    }

    /// Largest relative deviation of a post-collision height or speed from the isolated soliton.
    pub fn max_deviation_from_reference(&self) -> f64 {
        self.reference.iter().zip(&self.after).flat_map(|(r, a)| [((a.0 - r.0) / r.0).abs(), ((a.1 - r.1) / r.1).abs()]).fold(0.0, f64::max)
    }
}

fn wrapped(dx: f64, length: f64) -> f64 {
    dx - length * (dx / length).round()
}

/// Superposes two separated periodic solitons (`c_fast > c_slow`, the fast one trailing
/// by `gap`), runs through the overtaking collision and measures both solitons over a
/// window of length `probe` at the start and at the end of the run.
pub fn two_soliton_collision(config: &SolverConfig, c_fast: f64, c_slow: f64, gap: f64, probe: f64) -> Result<CollisionReport> {
    if !(c_fast > c_slow && c_slow > 0.0) {
        return Err(Error::param("c", "needs c_fast > c_slow > 0"));
    }
    let grid = config.grid;
    let l = grid.length();
    let slow = PeriodicSoliton::new(c_slow, 0.25 * l, l)?;
    // the fast wave trails the slow one in the direction of travel
    let fast_x0 = 0.25 * l - slow.polarity() * gap;
    let fast = PeriodicSoliton::new(c_fast, fast_x0, l)?;
    let u0 = fast.sample(grid, 0.0)?.add(&slow.sample(grid, 0.0)?)?;
    let out = run(config, &u0)?;
    let traj = out.trajectory;
    let times = traj.times();
    let t_end = *times.last().expect("nonempty run");
    if probe <= 0.0 || 2.0 * probe >= t_end {
        return Err(Error::param("probe", "must be positive and shorter than half the run"));
    }
    let frame_at = |t: f64| {
        let i = times.iter().position(|&s| s >= t - 1e-9).unwrap_or(times.len() - 1);
        (times[i], &traj.frames()[i])
    };
    let pol = slow.polarity();
    let measure = |t0: f64, t1: f64| -> Result<[(f64, f64); 2]> {
        let (ta, fa) = frame_at(t0);
        let (tb, fb) = frame_at(t1);
        let mut pa = locate_peaks(fa, pol, 2);
        let mut pb = locate_peaks(fb, pol, 2);
        if pa.len() < 2 || pb.len() < 2 {
            return Err(Error::param("run", "could not separate two solitons"));
        }
        // taller first
        pa.sort_by(|a, b| b.1.total_cmp(&a.1));
        pb.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut res = [(0.0, 0.0); 2];
        for i in 0..2 {
            let speed = wrapped(pb[i].0 - pa[i].0, l) / (tb - ta);
            res[i] = (0.5 * (pa[i].1 + pb[i].1), speed);
        }
        Ok(res)
    };
    let reference = [(pol * fast.value(fast_x0, 0.0), fast.speed()), (pol * slow.value(0.25 * l, 0.0), slow.speed())];
    Ok(CollisionReport { before: measure(0.0, probe)?, after: measure(t_end - probe, t_end)?, reference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid1D;

    #[test]
    fn peaks_between_grid_points() {
        let grid = Grid1D::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let (x1, x2) = (1.2345, 4.0);
        let u = Field::from_fn(grid, |x| -2.0 * (x - x1).cos() - 0.5 * (2.0 * (x - x2)).cos());
        let peaks = locate_peaks(&u, -1.0, 1);
        assert_eq!(peaks.len(), 1);
        // -u = 2 cos(x - x1) + ...: the dominant maximum sits near x1, off the grid
        let (x, h) = peaks[0];
        let (_, d1, _) = interpolant(&u, x);
        assert!(d1.abs() < 1e-10);
        assert!((x - x1).abs() < 0.2 && h > 2.0);
    }
}
