//! Dyadic partitions in space and in the conormal variable, paraproducts and commutators.

mod paraproduct;
mod partition;
mod profile;
mod spacetime;

pub use paraproduct::{bony_decomposition, low_pass_commutator, paraproduct, remainder, shell_commutator};
pub use partition::DyadicPartition;
pub use profile::{phi_hat, psi_hat, shell_weight, smooth_step};
pub use spacetime::{block_projection, in_sign_block, k_max_for, sigma_max, temporal_frequencies, BlockIndex};
