//! Named estimate cases with their default parameters, shared by the runner and tests.

use super::blocks::{block_cases, block_product_ratio, vanishing_cases};
use super::commutator::{low_pass_commutator_ratio, mixed_commutator_ratio, shell_derivative_commutator_ratio};
use super::linear::{bilinear_ratio, maximal_ratio, smoothing_ratio, strichartz_ratio, LinearRegime};
use super::plancherel::{plancherel_reports, DEFAULT_D_ETA, DEFAULT_LEN, DEFAULT_SPAN};
use super::report::{EstimateReport, Plateau};
use crate::error::{Error, Result};
use crate::spectral::{Grid1D, Sign};

pub const LINEAR_J_RANGE: (i32, i32) = (3, 7);
pub const BILINEAR_J_LOW: i32 = 0;
pub const COMMUTATOR_J_RANGE: (i32, i32) = (2, 6);
pub const COMMUTATOR_N: usize = 1024;
pub const COMMUTATOR_G_BAND: u64 = 4;
pub const MIXED_T_SPAN: f64 = 0.05;
pub const MIXED_N_TIMES: usize = 32;
pub const VANISHING_J_TOP: i32 = 6;

const LINEAR: [&str; 4] = ["strichartz", "maximal", "smoothing", "bilinear"];
const COMMUTATORS: [&str; 3] = ["commutator-low-pass", "commutator-shell-derivative", "commutator-mixed"];

pub fn case_ids() -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = LINEAR.into_iter().chain(COMMUTATORS).collect();
    ids.push("plancherel");
    ids.extend(block_cases().iter().map(|c| c.id));
    ids.push("block-vanishing");
    ids
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub seeds: Vec<u64>,
    /// Regularity of the linear estimates.
    pub s: f64,
    /// Overrides the default shell range of the linear and commutator cases.
    pub j_range: Option<(i32, i32)>,
}

impl SuiteParams {
    pub fn with_seeds(count: u64) -> Self {
        Self { seeds: (0..count).collect(), s: 0.0, j_range: None }
    }
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub id: String,
    pub reports: Vec<EstimateReport>,
    /// Envelope over the swept index; `None` for cases without a sweep.
    pub plateau: Option<Plateau>,
}

fn commutator_grid() -> Result<Grid1D> {
    Grid1D::new(COMMUTATOR_N, 2.0 * std::f64::consts::PI)
}

pub fn run_case(id: &str, p: &SuiteParams) -> Result<CaseOutcome> {
    let by_j = |r: &EstimateReport| r.indices[0].unwrap_or(0);
    let (reports, plateau) = if LINEAR.contains(&id) {
        let jr = p.j_range.unwrap_or(LINEAR_J_RANGE);
        let regime = LinearRegime::for_shells(jr.1)?;
        let reports = match id {
            "strichartz" => strichartz_ratio(&regime, p.s, jr, &p.seeds)?,
            "maximal" => maximal_ratio(&regime, jr, &p.seeds)?,
            "smoothing" => smoothing_ratio(&regime, p.s, jr, &p.seeds)?,
            _ => bilinear_ratio(&regime, BILINEAR_J_LOW, jr, &p.seeds)?,
        };
        let plateau = Plateau::from_reports(&reports, by_j);
        (reports, Some(plateau))
    } else if COMMUTATORS.contains(&id) {
        let jr = p.j_range.unwrap_or(COMMUTATOR_J_RANGE);
        let grid = commutator_grid()?;
        let reports = match id {
            "commutator-low-pass" => low_pass_commutator_ratio(grid, COMMUTATOR_G_BAND, jr, &p.seeds)?,
            "commutator-shell-derivative" => shell_derivative_commutator_ratio(grid, COMMUTATOR_G_BAND, jr, &p.seeds)?,
            _ => mixed_commutator_ratio(grid, COMMUTATOR_G_BAND, jr, MIXED_T_SPAN, MIXED_N_TIMES, &p.seeds)?,
        };
        let plateau = Plateau::from_reports(&reports, by_j);
        (reports, Some(plateau))
    } else if id == "plancherel" {
        (plancherel_reports(DEFAULT_D_ETA, DEFAULT_LEN, DEFAULT_SPAN, &p.seeds)?, None)
    } else if id == "block-vanishing" {
        let seed = p.seeds.first().copied().unwrap_or(0);
        let reports = vanishing_cases(VANISHING_J_TOP, seed)?
            .into_iter()
            .map(|(sign, j, jp, jo, r)| {
                let signs = format!("+{}+", if sign == Sign::Plus { '+' } else { '-' });
                EstimateReport::new(id, [Some(j), None, Some(jp), None, Some(jo), None], &signs, seed, r, 1.0)
            })
            .collect();
        (reports, None)
    } else if let Some(case) = block_cases().into_iter().find(|c| c.id == id) {
        let reports = block_product_ratio(&case, &p.seeds)?;
        let slot = case.swept;
        let plateau = Plateau::from_reports(&reports, |r| r.indices[slot].unwrap_or(0));
        (reports, Some(plateau))
    } else {
        return Err(Error::Config(format!("unknown estimate case `{id}`; known cases: {}", case_ids().join(", "))));
    };
    Ok(CaseOutcome { id: id.to_string(), reports, plateau })
}
