//! Space-time dyadic blocks `Delta^±_{jk}`: spatial shell `j` (mode units), conormal
//! shell `k` of `sigma = tau + theta(xi)` (physical units), and the sign of `xi`
//! (`xi = 0` belongs to the `+` block).

use num_complex::Complex64;

use super::partition::DyadicPartition;
use super::profile::shell_weight;
use crate::error::{Error, Result};
use crate::spectral::{fft_forward, fft_inverse, theta, Field, Grid1D, Realness, Sign, Trajectory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockIndex {
    pub j: i32,
    pub k: i32,
    pub sign: Sign,
}

/// Temporal frequency lattice of `m` samples spaced `dt`, using the same signed layout as space.
pub fn temporal_frequencies(m: usize, dt: f64) -> Vec<f64> {
    let w = 2.0 * std::f64::consts::PI / (m as f64 * dt);
    (0..m)
        .map(|q| {
            let q = q as i64;
            let s = if q < (m as i64 + 1) / 2 { q } else { q - m as i64 };
            w * s as f64
        })
        .collect()
}

/// Smallest `k_max` such that conormal shells `-1..=k_max` sum to one on `|sigma| <= sigma_max`.
pub fn k_max_for(sigma_max: f64) -> i32 {
    let mut k = -1;
    while f64::powi(2.0, k + 1) < sigma_max {
        k += 1;
    }
    k
}

/// Largest `|sigma|` on a grid: `max |tau| + max |theta(xi)|`.
pub fn sigma_max(grid: Grid1D, dt: f64) -> f64 {
    let tau = std::f64::consts::PI / dt;
    let xi = grid.fundamental() * (grid.n_points() / 2) as f64;
    tau + xi * xi
}

/// Whether the sign block contains mode `m` (Nyquist `-n/2` sits in the minus block).
pub fn in_sign_block(sign: Sign, m: i64) -> bool {
    match sign {
        Sign::Plus => m >= 0,
        Sign::Minus => m < 0,
    }
}

/// Applies the block `Delta^±_{jk}` to a uniformly sampled trajectory, treated as
/// periodic in time (taper it first). Returns complex frames.
pub fn block_projection(traj: &Trajectory, block: BlockIndex) -> Result<Trajectory> {
    let dt = traj.uniform_step().ok_or_else(|| Error::param("trajectory", "needs uniform time steps"))?;
    let grid = traj.grid();
    let n = grid.n_points();
    let m_t = traj.len();
    let taus = temporal_frequencies(m_t, dt);
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; m_t];
    for kx in 0..n {
        let m = grid.mode(kx);
        let wj = DyadicPartition::shell_weight(block.j, m.unsigned_abs());
        if wj == 0.0 || !in_sign_block(block.sign, m) {
            continue;
        }
        let th = theta(grid.wavenumber(kx));
        let mut col: Vec<Complex64> = traj.frames().iter().map(|f| f.spectrum()[kx]).collect();
        fft_forward(&mut col);
        for (c, tau) in col.iter_mut().zip(&taus) {
            *c *= wj * shell_weight(block.k, (tau + th).abs());
        }
        fft_inverse(&mut col);
        for (row, c) in out.iter_mut().zip(col) {
            row[kx] = c;
        }
    }
    let frames = out.into_iter().map(|spec| Field::from_spectrum(grid, spec, Realness::Complex)).collect::<Result<Vec<_>>>()?;
    Trajectory::new(grid, traj.times().to_vec(), frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_layout() {
        let t = temporal_frequencies(4, 0.5);
        let w = std::f64::consts::PI;
        assert_eq!(t, vec![0.0, w, -2.0 * w, -w]);
        assert_eq!(k_max_for(1.0), -1);
        assert_eq!(k_max_for(2.0), 0);
        assert_eq!(k_max_for(2.5), 1);
        assert_eq!(k_max_for(100.0), 6);
    }
}
