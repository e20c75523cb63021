//! Continuity of the data-to-solution map and persistence of regularity, measured on
//! paired solver runs.

use crate::error::{Error, Result};
use crate::norms::{besov_norm, sobolev_norm, xsbq_norm, NormSpec, Windowed};
use crate::solver::{run, SolverConfig};
use crate::spectral::{Field, Trajectory};

pub const DIFF_CT_L2: &str = "C_t L2";
pub const DIFF_CT_BESOV: &str = "C_t B^{-1/2,1}_2";
pub const DIFF_XSBQ: &str = "X^{0,1/2,1}";

/// Two runs from nearby data, with their difference measured in several norms.
#[derive(Clone, Debug)]
pub struct FlowPair {
    pub u0: Field,
    pub v0: Field,
    pub epsilon: f64,
    pub u: Trajectory,
    pub v: Trajectory,
    /// `(norm id, ||u - v||)`.
    pub differences: Vec<(&'static str, f64)>,
}

impl FlowPair {
    /// Runs both data with the same configuration.
    pub fn run(config: &SolverConfig, u0: &Field, v0: &Field) -> Result<Self> {
        let u = run(config, u0)?.trajectory;
        let v = run(config, v0)?.trajectory;
        Self::from_trajectories(u0.clone(), v0.clone(), u, v)
    }

    pub fn from_trajectories(u0: Field, v0: Field, u: Trajectory, v: Trajectory) -> Result<Self> {
        if u.grid() != v.grid() || u.times() != v.times() {
            return Err(Error::GridMismatch);
        }
        let epsilon = u0.distance(&v0)?;
        let frames = u.frames().iter().zip(v.frames()).map(|(a, b)| a.sub(b)).collect::<Result<Vec<_>>>()?;
        let diff = Trajectory::new(u.grid(), u.times().to_vec(), frames)?;
        let besov = NormSpec::Besov { s: -0.5, p: 2.0, q: 1.0 };
        let mut ct_l2: f64 = 0.0;
        let mut ct_b: f64 = 0.0;
        for f in diff.frames() {
            ct_l2 = ct_l2.max(f.norm_l2());
            ct_b = ct_b.max(besov_norm(f, &besov)?);
        }
        let x = xsbq_norm(&Windowed::covering(&diff)?, 0.0, 0.5, 1.0)?.value;
        Ok(Self { u0, v0, epsilon, u, v, differences: vec![(DIFF_CT_L2, ct_l2), (DIFF_CT_BESOV, ct_b), (DIFF_XSBQ, x)] })
    }

    pub fn difference(&self, id: &str) -> Option<f64> {
        self.differences.iter().find(|(n, _)| *n == id).map(|(_, v)| *v)
    }
}

/// Least-squares slope of `log ||diff||` against `log epsilon` for one norm.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderFit {
    pub norm: &'static str,
    pub slope: f64,
    /// `(epsilon, ||diff||)` along the ladder.
    pub points: Vec<(f64, f64)>,
}

impl HolderFit {
    /// Differences strictly decrease as epsilon decreases.
    pub fn monotone(&self) -> bool {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.windows(2).all(|w| w[0].1 < w[1].1)
    }
}

pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Debug)]
pub struct FlowHolderReport {
    pub pairs: Vec<FlowPair>,
    pub fits: Vec<HolderFit>,
}

impl FlowHolderReport {
    pub fn fit(&self, id: &str) -> Option<&HolderFit> {
        self.fits.iter().find(|f| f.norm == id)
    }
}

/// Runs `u0` against `u0 + eps * p` for every `eps` in the ladder (`p` is normalized
/// to unit L2 norm) and fits the Hölder exponents.
pub fn flow_holder_experiment(config: &SolverConfig, u0: &Field, perturbation: &Field, eps_ladder: &[f64]) -> Result<FlowHolderReport> {
    if eps_ladder.len() < 2 || eps_ladder.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::param("eps_ladder", "needs at least two positive values"));
    }
    let norm = perturbation.norm_l2();
    if norm == 0.0 {
        return Err(Error::param("perturbation", "must be nonzero"));
    }
    let grid = config.grid;
    let cut = grid.dealias_cutoff(config.dealias);
    let outside: f64 =
        perturbation.spectrum().iter().enumerate().filter(|(k, _)| grid.mode(*k).abs() >= cut).map(|(_, c)| c.norm_sqr()).sum();
    if outside > 1e-24 * perturbation.spectral_energy() {
        return Err(Error::param("perturbation", "carries modes above the dealiasing cutoff (under-resolved)"));
    }
    let base = run(config, u0)?.trajectory;
    let mut pairs = Vec::new();
    for &eps in eps_ladder {
        let v0 = u0.add(&perturbation.scale(eps / norm))?;
        let v = run(config, &v0)?.trajectory;
        pairs.push(FlowPair::from_trajectories(u0.clone(), v0, base.clone(), v)?);
    }
    let fits = [DIFF_CT_L2, DIFF_CT_BESOV, DIFF_XSBQ]
        .into_iter()
        .map(|id| {
            let points: Vec<(f64, f64)> = pairs.iter().map(|p| (p.epsilon, p.difference(id).unwrap_or(f64::NAN))).collect();
            HolderFit { norm: id, slope: log_log_slope(&points), points }
        })
        .collect();
    Ok(FlowHolderReport { pairs, fits })
}

/// Running `H^{1/2}` norm along a run and its largest ratio to the initial value.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceReport {
    pub times: Vec<f64>,
    pub h_half: Vec<f64>,
    pub max_ratio: f64,
}

pub fn persistence_run(config: &SolverConfig, u0: &Field) -> Result<PersistenceReport> {
    let traj = run(config, u0)?.trajectory;
    let h_half: Vec<f64> = traj.frames().iter().map(|f| sobolev_norm(f, 0.5)).collect();
    let first = h_half[0];
    if first == 0.0 {
        return Err(Error::param("u0", "must be nonzero"));
    }
    let max_ratio = h_half.iter().fold(0.0_f64, |m, v| m.max(v / first));
    Ok(PersistenceReport { times: traj.times().to_vec(), h_half, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{random_real_field, rng};
    use crate::spectral::Grid1D;

    #[test]
    fn slope_of_power_law_is_exact() {
        let pts: Vec<(f64, f64)> = [1e-1, 1e-2, 3e-3, 1e-4].iter().map(|&e| (e, 7.0 * f64::powf(e, 0.37))).collect();
        assert!((log_log_slope(&pts) - 0.37).abs() < 1e-12);
        let fit = HolderFit { norm: DIFF_CT_L2, slope: 0.37, points: pts };
        assert!(fit.monotone());
    }

    #[test]
    fn rejects_bad_inputs() {
        let grid = Grid1D::new(32, 2.0 * std::f64::consts::PI).unwrap();
        let cfg = SolverConfig::new(grid, 1e-3, 1e-2);
        let u0 = random_real_field(grid, 1, 2, Some(0.1), &mut rng(0));
        let p = random_real_field(grid, 1, 3, Some(1.0), &mut rng(1));
        assert!(flow_holder_experiment(&cfg, &u0, &p, &[1e-2]).is_err());
        assert!(flow_holder_experiment(&cfg, &u0, &p, &[1e-2, -1e-3]).is_err());
        assert!(flow_holder_experiment(&cfg, &u0, &Field::zeros(grid), &[1e-2, 1e-3]).is_err());
        // modes 11..15 sit above the 2/3 cutoff of a 32-point grid
        let high = random_real_field(grid, 11, 15, Some(1.0), &mut rng(2));
        let err = flow_holder_experiment(&cfg, &u0, &high, &[1e-2, 1e-3]).unwrap_err();
        assert!(err.to_string().contains("under-resolved"));
    }
}
