//! Gauge checks over a random ensemble of small solutions.

use super::antiderivative::AntiDerivative;
use super::forward::{gauge_forward, renormalized_shells, GaugedPair};
use super::inverse::gauge_inverse;
use super::GaugeSettings;
use crate::ensemble::{random_real_field, rng};
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::norms::{plain_mixed_norm, y_requests};
use crate::solver::{run, SolverConfig};
use crate::spectral::{Field, Grid1D, Sign, Trajectory};

/// Random mean-zero data on modes `band.0..=band.1` with `||u0||_2 = size`, evolved by
/// the solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeEnsemble {
    pub grid: Grid1D,
    pub dt: f64,
    pub t_end: f64,
    pub record_every: usize,
    pub band: (u64, u64),
    pub size: f64,
    /// Dealiasing fraction of the solver runs. One half keeps every solution mode inside
    /// the band represented by the dyadic shells.
    pub solver_dealias: f64,
}

impl GaugeEnsemble {
    pub fn solver_config(&self) -> SolverConfig {
        let mut c = SolverConfig::new(self.grid, self.dt, self.t_end);
        c.record_every = self.record_every;
        c.dealias = self.solver_dealias;
        c
    }

    pub fn initial(&self, seed: u64) -> Field {
        random_real_field(self.grid, self.band.0, self.band.1, Some(self.size), &mut rng(seed))
    }

    pub fn member(&self, seed: u64) -> Result<Trajectory> {
        Ok(run(&self.solver_config(), &self.initial(seed))?.trajectory)
    }
}

/// Worst-case comparison of `||w_j||` with `||u_j||` over shells and the four `Y` norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceReport {
    /// `||u0||_2` (of the renormalizing solution).
    pub size: f64,
    /// `min ||w_j|| / ((1 - size) ||u_j||)`; at least 1 when the lower bound holds, and
    /// infinite when `size >= 1` makes the bound vacuous.
    pub lower_margin: f64,
    /// `max ||w_j|| / ||u_j|| - 1`; at most 0 when the upper bound holds.
    pub upper_excess: f64,
    pub comparisons: usize,
}

impl EquivalenceReport {
    pub fn lower_holds(&self) -> bool {
        self.lower_margin >= 1.0
    }

    pub fn upper_holds(&self, tol: f64) -> bool {
        self.upper_excess <= tol
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            size: self.size.max(other.size),
            lower_margin: self.lower_margin.min(other.lower_margin),
            upper_excess: self.upper_excess.max(other.upper_excess),
            comparisons: self.comparisons + other.comparisons,
        }
    }
}

fn real_shell(frames: impl Iterator<Item = Field>, like: &Trajectory) -> Result<Trajectory> {
    let frames: Vec<Field> = frames.map(|f| f.re().scale(2.0)).collect();
    Trajectory::new(like.grid(), like.times().to_vec(), frames)
}

/// Compares `w_j` (shells of `u` renormalized by the phase of `by`) with `u_j`. Shells
/// whose `u_j` norm is below `1e-12` of the largest are skipped.
pub fn norm_equivalence(u: &Trajectory, by: &AntiDerivative, settings: &GaugeSettings) -> Result<EquivalenceReport> {
    let (_, shells) = renormalized_shells(u, by, settings)?;
    let part = DyadicPartition::new(u.grid());
    let size = by.u.frames()[0].norm_l2();
    let mut rows = Vec::new();
    for j in 0..=part.j_max() {
        let uj = real_shell(u.frames().iter().map(|f| part.shell_signed(f, j, Sign::Plus).expect("grid")), u)?;
        let wj = real_shell(shells.iter().map(|row| row[j as usize].clone()), u)?;
        for req in y_requests() {
            rows.push((plain_mixed_norm(&uj, req), plain_mixed_norm(&wj, req)));
        }
    }
    let top = rows.iter().fold(0.0_f64, |m, r| m.max(r.0));
    let mut report = EquivalenceReport { size, lower_margin: f64::INFINITY, upper_excess: f64::NEG_INFINITY, comparisons: 0 };
    for (nu, nw) in rows.into_iter().filter(|r| r.0 > 1e-12 * top) {
        if size < 1.0 {
            report.lower_margin = report.lower_margin.min(nw / ((1.0 - size) * nu));
        }
        report.upper_excess = report.upper_excess.max(nw / nu - 1.0);
        report.comparisons += 1;
    }
    Ok(report)
}

/// One ensemble member pushed through the forward and inverse gauge.
#[derive(Clone, Debug)]
pub struct GaugeCheck {
    pub seed: u64,
    pub pair: GaugedPair,
    pub dx_residual: f64,
    pub dt_residual: f64,
    pub equivalence: EquivalenceReport,
    /// `max_t ||inverse(forward(u)) - u|| / ||u||`.
    pub round_trip: f64,
    pub mean_sweeps: f64,
}

pub fn gauge_check(ens: &GaugeEnsemble, settings: &GaugeSettings, seed: u64, tol: f64) -> Result<GaugeCheck> {
    if !(ens.size > 0.0 && ens.size <= 0.5) {
        return Err(Error::param("size", format!("{} outside (0, 0.5]: the inverse is not guaranteed to contract", ens.size)));
    }
    let u = ens.member(seed)?;
    let pair = gauge_forward(&u, settings)?;
    let equivalence = norm_equivalence(&u, &pair.antiderivative, settings)?;
    let inv = gauge_inverse(&pair, None, tol, 200)?;
    let mut round_trip: f64 = 0.0;
    for (a, b) in inv.u.frames().iter().zip(u.frames()) {
        let n = b.norm_l2();
        if n > 0.0 {
            round_trip = round_trip.max(a.distance(b)? / n);
        }
    }
    let mean_sweeps = inv.iterations.iter().sum::<usize>() as f64 / inv.iterations.len() as f64;
    Ok(GaugeCheck {
        seed,
        dx_residual: pair.antiderivative.dx_residual()?,
        dt_residual: pair.antiderivative.dt_residual()?,
        pair,
        equivalence,
        round_trip,
        mean_sweeps,
    })
}

/// Renormalizes the member `seed` by the phase of the member `other`.
pub fn cross_equivalence(ens: &GaugeEnsemble, settings: &GaugeSettings, seed: u64, other: u64) -> Result<EquivalenceReport> {
    let u = ens.member(seed)?;
    let v = ens.member(other)?;
    let by = AntiDerivative::new(&v, settings)?;
    norm_equivalence(&u, &by, settings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_data_rejected() {
        let ens = GaugeEnsemble {
            grid: Grid1D::new(64, 2.0 * std::f64::consts::PI).unwrap(),
            dt: 1e-3,
            t_end: 0.01,
            record_every: 1,
            band: (1, 4),
            size: 0.6,
            solver_dealias: 0.5,
        };
        assert!(gauge_check(&ens, &GaugeSettings::default(), 0, 1e-10).is_err());
    }

    #[test]
    fn merge_keeps_worst_case() {
        let a = EquivalenceReport { size: 0.1, lower_margin: 1.2, upper_excess: -0.1, comparisons: 3 };
        let b = EquivalenceReport { size: 0.2, lower_margin: 1.05, upper_excess: 0.01, comparisons: 4 };
        let m = a.merge(b);
        assert_eq!((m.lower_margin, m.upper_excess, m.comparisons), (1.05, 0.01, 7));
        assert!(m.lower_holds());
        assert!(!m.upper_holds(1e-3) && m.upper_holds(0.02));
    }
}
