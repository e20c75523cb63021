//! Periodic grids, fields, Fourier multipliers and trajectories.

mod fft;
mod field;
mod grid;
mod ops;
mod trajectory;

pub use fft::{forward as fft_forward, inverse as fft_inverse};
pub use field::{Field, Realness};
pub use grid::Grid1D;
pub use ops::{
    antiderivative, derivative, dispersion_provenance, dispersion_residuals, dispersion_sign, fractional_derivative, free_evolution,
    hilbert, project, theta, Sign,
};
pub use trajectory::Trajectory;
