use num_complex::Complex64;

use super::forward::{gauge_factor, GaugedPair};
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{antiderivative, Field, Realness, Sign, Trajectory};

#[derive(Clone, Debug)]
pub struct InverseReport {
    pub u: Trajectory,
    /// Sweeps needed per frame.
    pub iterations: Vec<usize>,
}

/// Recovers `u` from the gauge shells by fixed-point iteration on
/// `Delta_j u^+ = F^{-1} w_j^+ + F^{-1} (F - S_{j-1} F) Delta_j u^+`, with `F` rebuilt
/// from the current iterate each sweep. Uses the pair's `G(t)` and averaging bump, and
/// the seed (or `w` itself) as the starting point.
pub fn gauge_inverse(pair: &GaugedPair, seed: Option<&Trajectory>, tol: f64, max_sweeps: usize) -> Result<InverseReport> {
    let grid = pair.u().grid();
    let part = DyadicPartition::new(grid);
    let settings = pair.settings;
    let cut = grid.dealias_cutoff(settings.dealias);
    let psi = &pair.antiderivative.psi;
    let mut frames = Vec::with_capacity(pair.low.len());
    let mut iterations = Vec::with_capacity(pair.low.len());

    // admissible modes of each shell: positive, inside the shell, below the dealiasing cut
    let allowed: Vec<Vec<bool>> = (0..=part.j_max())
        .map(|j| {
            (0..grid.n_points())
                .map(|k| {
                    let m = grid.mode(k);
                    m > 0 && m <= cut && DyadicPartition::shell_weight(j, m as u64) != 0.0
                })
                .collect()
        })
        .collect();
    let project = |f: &Field, j: usize| {
        f.apply_multiplier(Realness::Complex, |m, g| {
            let k = g.index_of(m).expect("on grid");
            if allowed[j][k] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    };

    for n in 0..pair.low.len() {
        let w_shells = &pair.shells[n];
        let g_n = pair.antiderivative.g_correction[n];
        let mut u = match seed {
            Some(s) => s.frames()[n].clone(),
            None => pair.w(n)?,
        };
        let mut a: Vec<Field> = (0..=part.j_max()).map(|j| part.shell_signed(&u, j, Sign::Plus)).collect::<Result<_>>()?;
        let scale = pair.w(n)?.norm_l2();
        let mut sweeps = 0;
        loop {
            sweeps += 1;
            let v = antiderivative(&u, 1e-9)?;
            let shift = g_n - v.values().iter().zip(psi.values()).map(|(a, b)| a.re * b.re).sum::<f64>() * grid.dx();
            let big = v.map(Realness::Real, |z| z + shift);
            let factor = gauge_factor(&big, settings.exponent_sign);
            let inv = factor.conj();
            let mut plus = pair.low[n].clone();
            for (j, w_j) in w_shells.iter().enumerate() {
                let sf = factor.apply_radial(|r| DyadicPartition::low_pass_weight(j as i32 - 1, r));
                let resid = w_j.sub(&sf.mul_dealiased(&a[j], settings.dealias)?)?;
                let corr = project(&inv.mul_dealiased(&resid, settings.dealias)?, j);
                a[j] = a[j].add(&corr)?;
                plus = plus.add(&a[j])?;
            }
            let next = plus.re().scale(2.0);
            let inc = next.distance(&u)?;
            u = next;
            if !inc.is_finite() || inc > 1e6 * scale.max(1e-300) {
                return Err(Error::NoConvergence { iterations: sweeps, increment: inc });
            }
            if inc <= tol * scale || inc == 0.0 {
                break;
            }
            if sweeps >= max_sweeps {
                return Err(Error::NoConvergence { iterations: sweeps, increment: inc });
            }
        }
        frames.push(u);
        iterations.push(sweeps);
    }
    Ok(InverseReport { u: Trajectory::new(grid, pair.u().times().to_vec(), frames)?, iterations })
}
