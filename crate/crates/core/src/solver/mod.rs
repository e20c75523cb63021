//! Pseudospectral Benjamin-Ono solver `u_t + H u_xx + u u_x = 0` on the torus.

mod checkpoint;
mod collision;
mod integrator;
mod invariants;
mod rescale;
mod soliton;

pub use checkpoint::{
    read_checkpoint, read_trajectory, write_checkpoint, write_trajectory, SolverMeta, CHECKPOINT_FORMAT, CHECKPOINT_VERSION,
};
pub use collision::{locate_peaks, two_soliton_collision, CollisionReport};
pub use integrator::{run, RunOutput, SolverConfig};
pub use invariants::{hamiltonian, mass, ConservationLedger, LedgerRow};
pub use rescale::{rescale_field, rescale_trajectory, tile};
pub use soliton::PeriodicSoliton;
