//! Randomized numerical checks of the linear, bilinear and block-product estimates.

pub mod blocks;
pub mod commutator;
pub mod flow;
pub mod linear;
pub mod plancherel;
pub mod report;
pub mod suite;

pub use blocks::{
    block_cases, block_product_norm, block_product_ratio, support_vanishes, vanishing_cases, BlockCase, BlockScale, LatticeBlock,
    OutputBlock,
};
pub use commutator::{
    kernel_first_moment, kernel_moment, low_pass_commutator_ratio, low_pass_kernel_l1, low_pass_moment, mixed_commutator_ratio,
    shell_derivative_commutator_ratio, shell_moment,
};
pub use flow::{
    flow_holder_experiment, log_log_slope, persistence_run, FlowHolderReport, FlowPair, HolderFit, PersistenceReport, DIFF_CT_BESOV,
    DIFF_CT_L2, DIFF_XSBQ,
};
pub use linear::{bilinear_ratio, linear_estimates, maximal_ratio, single_ratios, smoothing_ratio, strichartz_ratio, LinearRegime};
pub use plancherel::{
    indicator_rhs, lattice_indicator, plancherel_bilinear_identity, plancherel_reports, random_pair, PlancherelOutcome, SampledProfile,
    DEFAULT_D_ETA, DEFAULT_LEN, DEFAULT_SPAN,
};
pub use report::{reports_csv, EstimateReport, Plateau};
pub use suite::{case_ids, run_case, CaseOutcome, SuiteParams};
