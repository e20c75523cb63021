//! Experiment configuration: one TOML file per run. Unknown keys are rejected.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::spectral::Grid1D;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Solve,
    Norms,
    GaugeCheck,
    Estimates,
    FlowHolder,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Solve, Kind::Norms, Kind::GaugeCheck, Kind::Estimates, Kind::FlowHolder];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Solve => "solve",
            Kind::Norms => "norms",
            Kind::GaugeCheck => "gauge-check",
            Kind::Estimates => "estimates",
            Kind::FlowHolder => "flow-holder",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Config(format!("unknown experiment kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_points: usize,
    pub length: f64,
}

fn one() -> usize {
    1
}

fn two_thirds() -> f64 {
    2.0 / 3.0
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    /// Defaults to the transport CFL bound of the grid.
    pub dt: Option<f64>,
    pub t_end: f64,
    #[serde(default = "one")]
    pub record_every: usize,
    #[serde(default = "two_thirds")]
    pub dealias: f64,
    /// Subtract the mean of the data before running (exact Galilean reduction).
    #[serde(default = "yes")]
    pub subtract_mean: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    /// Periodic soliton of parameter `c` centred at `x0`.
    Soliton { c: f64, x0: f64 },
    /// Gaussian coefficients on `band[0] <= |m| <= band[1]`, L2 norm `l2`, drawn from `seed`.
    Random { band: [u64; 2], l2: f64 },
    /// A stored trajectory; relative paths resolve against the config file.
    Checkpoint { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NormEntry {
    Besov { s: f64, p: f64, q: f64 },
    Sobolev { s: f64 },
    Lb { rho: f64, s: f64, p: f64, q: f64 },
    Bl { s: f64, p: f64, q: f64, rho: f64 },
    Xsbq { s: f64, b: f64, q: f64 },
    Y { s: f64 },
}

impl NormEntry {
    pub fn spec(self) -> NormSpec {
        match self {
            NormEntry::Besov { s, p, q } => NormSpec::Besov { s, p, q },
            NormEntry::Sobolev { s } => NormSpec::Sobolev { s },
            NormEntry::Lb { rho, s, p, q } => NormSpec::Lb { rho, s, p, q },
            NormEntry::Bl { s, p, q, rho } => NormSpec::Bl { s, p, q, rho },
            NormEntry::Xsbq { s, b, q } => NormSpec::Xsbq { s, b, q },
            NormEntry::Y { s } => NormSpec::Y { s },
        }
    }
}

fn psi_width() -> f64 {
    1.0 / 16.0
}

fn margin() -> i32 {
    3
}

fn inverse_tol() -> f64 {
    1e-10
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSection {
    /// Shells of the residual report; defaults to `[2, j_max - 3]`.
    pub shells: Option<[i32; 2]>,
    #[serde(default = "psi_width")]
    pub psi_width: f64,
    #[serde(default = "margin")]
    pub margin: i32,
    #[serde(default = "inverse_tol")]
    pub inverse_tol: f64,
}

impl Default for GaugeSection {
    fn default() -> Self {
        Self { shells: None, psi_width: psi_width(), margin: margin(), inverse_tol: inverse_tol() }
    }
}

fn twenty() -> u64 {
    20
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatesSection {
    #[serde(default)]
    pub cases: Vec<String>,
    /// Seeds `0..seeds`.
    #[serde(default = "twenty")]
    pub seeds: u64,
    #[serde(default)]
    pub s: f64,
    pub j_range: Option<[i32; 2]>,
}

fn ladder() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3, 1e-4]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSection {
    /// Modes of the perturbation direction.
    pub perturbation_band: [u64; 2],
    #[serde(default = "ladder")]
    pub eps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Kind,
    #[serde(default)]
    pub seed: u64,
    /// Relative paths resolve against the output root.
    pub output_dir: PathBuf,
    pub grid: Option<GridSection>,
    pub solver: Option<SolverSection>,
    pub initial: Option<InitialData>,
    #[serde(default)]
    pub norms: Vec<NormEntry>,
    pub gauge: Option<GaugeSection>,
    pub estimates: Option<EstimatesSection>,
    pub flow: Option<FlowSection>,
}

fn missing(key: &str, kind: Kind) -> Error {
    Error::Config(format!("`{key}` is required for `{}`", kind.name()))
}

fn bad(key: &str, reason: impl std::fmt::Display) -> Error {
    Error::Config(format!("`{key}`: {reason}"))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn grid(&self) -> Result<Grid1D> {
        let g = self.grid.ok_or_else(|| missing("grid", self.kind))?;
        Grid1D::new(g.n_points, g.length).map_err(|e| bad("grid", e))
    }

    fn needs_trajectory(&self) -> bool {
        matches!(self.kind, Kind::Solve | Kind::Norms | Kind::GaugeCheck | Kind::FlowHolder)
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<()> {
        if self.output_dir.as_os_str().is_empty() {
            return Err(bad("output_dir", "must not be empty"));
        }
        if self.needs_trajectory() {
            let initial = self.initial.as_ref().ok_or_else(|| missing("initial", self.kind))?;
            let from_file = matches!(initial, InitialData::Checkpoint { .. });
            if from_file && matches!(self.kind, Kind::Solve | Kind::FlowHolder) {
                return Err(bad("initial.preset", format!("`checkpoint` cannot seed `{}`", self.kind.name())));
            }
            if !from_file {
                let grid = self.grid()?;
                let solver = self.solver.ok_or_else(|| missing("solver", self.kind))?;
                if !(solver.t_end.is_finite() && solver.t_end > 0.0) {
                    return Err(bad("solver.t_end", "must be positive"));
                }
                if let Some(dt) = solver.dt {
                    if !(dt.is_finite() && dt > 0.0) {
                        return Err(bad("solver.dt", "must be positive"));
                    }
                }
                if solver.record_every == 0 {
                    return Err(bad("solver.record_every", "must be at least 1"));
                }
                if !(solver.dealias > 0.0 && solver.dealias <= 1.0) {
                    return Err(bad("solver.dealias", "must lie in (0, 1]"));
                }
                match initial {
                    InitialData::Soliton { c, .. } if !(c.is_finite() && *c > 0.0) => {
                        return Err(bad("initial.c", "must be positive"));
                    }
                    InitialData::Random { band, l2 } => {
                        if band[0] > band[1] || band[1] as usize >= grid.n_points() / 2 {
                            return Err(bad("initial.band", "needs lo <= hi < n_points / 2"));
                        }
                        if !(l2.is_finite() && *l2 > 0.0) {
                            return Err(bad("initial.l2", "must be positive"));
                        }
                    }
                    _ => {}
                }
            }
        }
        for (i, n) in self.norms.iter().enumerate() {
            n.spec().validate().map_err(|e| bad(&format!("norms[{i}]"), e))?;
        }
        match self.kind {
            Kind::Norms if self.norms.is_empty() => return Err(missing("norms", self.kind)),
            Kind::Estimates => {
                let est = self.estimates.as_ref().ok_or_else(|| missing("estimates", self.kind))?;
                let known = crate::estimates::case_ids();
                if let Some(bad_id) = est.cases.iter().find(|c| !known.contains(&c.as_str())) {
                    return Err(bad("estimates.cases", format!("unknown case `{bad_id}`; known cases: {}", known.join(", "))));
                }
                if let Some([lo, hi]) = est.j_range {
                    if lo > hi {
                        return Err(bad("estimates.j_range", "needs lo <= hi"));
                    }
                }
            }
            Kind::FlowHolder => {
                let flow = self.flow.as_ref().ok_or_else(|| missing("flow", self.kind))?;
                if flow.eps.len() < 2 || flow.eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
                    return Err(bad("flow.eps", "needs at least two positive values"));
                }
                if flow.perturbation_band[0] == 0 || flow.perturbation_band[0] > flow.perturbation_band[1] {
                    return Err(bad("flow.perturbation_band", "needs 1 <= lo <= hi"));
                }
            }
            Kind::GaugeCheck => {
                let g = self.gauge.unwrap_or_default();
                if !(g.psi_width > 0.0 && g.psi_width < 0.5) {
                    return Err(bad("gauge.psi_width", "must lie in (0, 0.5)"));
                }
                if g.margin < 1 {
                    return Err(bad("gauge.margin", "must be at least 1"));
                }
                if !(g.inverse_tol > 0.0) {
                    return Err(bad("gauge.inverse_tol", "must be positive"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUGE: &str = r#"
kind = "gauge-check"
output_dir = "g"
[grid]
n_points = 64
length = 6.283185307179586
[solver]
t_end = 0.1
[initial]
preset = "random"
band = [1, 4]
l2 = 0.1
"#;

    fn err(text: &str) -> String {
        match ExperimentConfig::parse(text) {
            Err(Error::Config(m)) => m,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::parse(GAUGE).unwrap();
        assert_eq!(c.seed, 0);
        let s = c.solver.unwrap();
        assert_eq!((s.dt, s.record_every, s.dealias, s.subtract_mean), (None, 1, 2.0 / 3.0, true));
        assert_eq!(c.gauge.unwrap_or_default(), GaugeSection::default());
    }

    #[test]
    fn unknown_keys_are_named() {
        assert!(err(&GAUGE.replace("t_end = 0.1", "t_end = 0.1\nt_ende = 2")).contains("t_ende"));
        assert!(err(&format!("colour = 1\n{GAUGE}")).contains("colour"));
    }

    #[test]
    fn invalid_values_are_named() {
        assert!(err(&GAUGE.replace("l2 = 0.1", "l2 = -0.1")).contains("initial.l2"));
        assert!(err(&GAUGE.replace("band = [1, 4]", "band = [1, 40]")).contains("initial.band"));
        assert!(err(&GAUGE.replace("t_end = 0.1", "t_end = 0.1\ndealias = 1.5")).contains("solver.dealias"));
        assert!(err(&GAUGE.replace("kind = \"gauge-check\"", "kind = \"norms\"")).contains("norms"));
        assert!(err(&GAUGE.replace("kind = \"gauge-check\"", "kind = \"estimates\"")).contains("estimates"));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("solver".parse::<Kind>().is_err());
    }

    #[test]
    fn unknown_estimate_case_lists_known_ones() {
        let m = err("kind = \"estimates\"\noutput_dir = \"e\"\n[estimates]\ncases = [\"strichartz\", \"nope\"]\n");
        assert!(m.contains("nope") && m.contains("strichartz"));
    }
}
