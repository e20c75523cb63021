//! Conormal norm `X^{s,b,q}` of a (tapered) space-time field, column by column.

use super::source::SpaceTime;
use super::spec::{dyadic_weight, lq};
use crate::error::{Error, Result};
use crate::littlewood_paley::{k_max_for, shell_weight, sigma_max, temporal_frequencies, DyadicPartition};
use crate::spectral::{fft_forward, theta};

#[derive(Clone, Debug, PartialEq)]
pub struct XsbqReport {
    pub value: f64,
    /// `||Delta_{jk} u||_{L^2}` as `(j, k, norm)` for every nonzero block.
    pub blocks: Vec<(i32, i32, f64)>,
    /// Conormal shells narrower than the temporal frequency spacing.
    pub unresolved_k: Vec<i32>,
    pub k_max: i32,
}

/// Shell indices `k` whose weight at `r` can be nonzero.
fn conormal_shells(r: f64) -> impl Iterator<Item = i32> {
    let top = if r < 1.0 { -1 } else { r.log2().floor() as i32 };
    (-1..=top).rev().take(3)
}

/// Block energies and the `l^q` norm of `2^{js + kb} ||Delta_{jk} u||`.
///
/// The source is treated as periodic in time over `len * dt`; apply a taper first.
pub fn xsbq_norm<S: SpaceTime + ?Sized>(src: &S, s: f64, b: f64, q: f64) -> Result<XsbqReport> {
    if !(q >= 1.0) || !s.is_finite() || !b.is_finite() {
        return Err(Error::param("spec", "xsbq needs finite s, b and q in [1, inf]"));
    }
    let dt = src.uniform_step().ok_or_else(|| Error::param("trajectory", "xsbq needs uniform time steps"))?;
    let grid = src.grid();
    let part = DyadicPartition::new(grid);
    let m_t = src.times().len();
    let taus = temporal_frequencies(m_t, dt);
    let k_max = k_max_for(sigma_max(grid, dt));
    let n_j = (part.j_max() + 2) as usize;
    let n_k = (k_max + 2) as usize;
    let mut mass = vec![vec![0.0; n_k]; n_j];
    let nyquist = std::f64::consts::PI / dt.abs();
    let (mut total, mut aliased) = (0.0, 0.0);

    let modes = src.active_modes().unwrap_or_else(|| (0..grid.n_points()).collect());
    for &kx in &modes {
        let r = grid.mode(kx).unsigned_abs();
        let js: Vec<(usize, f64)> = (-1..=part.j_max())
            .filter_map(|j| {
                let w = DyadicPartition::shell_weight(j, r);
                (w != 0.0).then_some(((j + 1) as usize, w * w))
            })
            .collect();
        let mut col = src.column(kx);
        let energy: f64 = col.iter().map(|c| c.norm_sqr()).sum();
        if energy == 0.0 {
            continue;
        }
        total += energy;
        let th = if grid.is_nyquist(kx) { 0.0 } else { theta(grid.wavenumber(kx)) };
        if th.abs() > nyquist {
            aliased += energy;
        }
        if js.is_empty() {
            continue;
        }
        fft_forward(&mut col);
        for (c, tau) in col.iter().zip(&taus) {
            let e = c.norm_sqr();
            if e == 0.0 {
                continue;
            }
            let sigma = (tau + th).abs();
            for k in conormal_shells(sigma) {
                let wk = shell_weight(k, sigma);
                if wk == 0.0 {
                    continue;
                }
                for &(ji, wj2) in &js {
                    mass[ji][(k + 1) as usize] += wj2 * wk * wk * e;
                }
            }
        }
    }
    if aliased > 1e-12 * total {
        let max_frequency = modes
            .iter()
            .copied()
            .filter(|&kx| src.column(kx).iter().any(|c| c.norm_sqr() > 0.0))
            .map(|kx| theta(grid.wavenumber(kx)).abs())
            .fold(0.0, f64::max);
        return Err(Error::UnresolvedTime { max_frequency, nyquist });
    }

    // ||v||^2 = (m_t dt) L sum |c|^2 with the 1/(m_t n) normalised transform
    let scale = m_t as f64 * dt.abs() * grid.length();
    let mut blocks = Vec::new();
    for (ji, row) in mass.iter().enumerate() {
        for (ki, &m) in row.iter().enumerate() {
            if m > 0.0 {
                blocks.push((ji as i32 - 1, ki as i32 - 1, (m * scale).sqrt()));
            }
        }
    }
    let value = lq(blocks.iter().map(|&(j, k, v)| dyadic_weight(j, s) * dyadic_weight(k, b) * v), q);
    let dtau = 2.0 * std::f64::consts::PI / (m_t as f64 * dt.abs());
    let unresolved_k = (-1..=k_max).filter(|&k| f64::powi(2.0, k.max(0)) < dtau).collect();
    Ok(XsbqReport { value, blocks, unresolved_k, k_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conormal_shell_candidates() {
        for i in 0..4000 {
            let r = i as f64 * 0.05;
            let listed: Vec<i32> = conormal_shells(r).collect();
            for k in -1..12 {
                if shell_weight(k, r) != 0.0 {
                    assert!(listed.contains(&k), "r={r} k={k}");
                }
            }
        }
    }
}
