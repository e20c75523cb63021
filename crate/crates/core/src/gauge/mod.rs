//! Gauge transform: primitive `U`, renormalised shells `w_j^+ = S_{j-1}(F) Delta_j^+ u`
//! with `F = exp(i eps U / 2)`, the inverse map, and the renormalised-equation residual.

mod antiderivative;
mod ensemble;
mod forward;
mod inverse;
mod residual;

pub use antiderivative::{averaging_profile, centered_derivative, cumulative_integral, AntiDerivative};
pub use ensemble::{cross_equivalence, gauge_check, norm_equivalence, EquivalenceReport, GaugeCheck, GaugeEnsemble};
pub use forward::{gauge_factor, gauge_forward, renormalized_shells, GaugedPair};
pub use inverse::{gauge_inverse, InverseReport};
pub use residual::{paralinearization_check, renorm_residual, ResidualReport};

/// Knobs shared by the gauge operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeSettings {
    pub dealias: f64,
    /// Standard deviation of the averaging bump as a fraction of the box length.
    pub psi_width: f64,
    /// `eps` in `F = exp(i eps U / 2)` for the `+` shells. `+1` is the sign for which the
    /// low-high transport term cancels with the Hilbert symbol `-i sgn xi`.
    pub exponent_sign: f64,
    /// Margin `K` in `u_{<j} = S_{j-K} u`.
    pub margin: i32,
}

impl Default for GaugeSettings {
    fn default() -> Self {
        Self { dealias: 2.0 / 3.0, psi_width: 1.0 / 16.0, exponent_sign: 1.0, margin: 3 }
    }
}
