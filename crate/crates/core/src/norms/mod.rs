//! Besov, Sobolev, mixed space-time, `Y^s` and conormal `X^{s,b,q}` norms.

mod besov;
mod interpolation;
mod mixed;
mod source;
mod spec;
mod xsbq;

pub use besov::{besov_norm, shell_norms, sobolev_norm};
pub use interpolation::{interpolation_check, interpolation_constant, weighted_sequence_norm, InterpolationCheck};
pub use mixed::{
    mixed_norm, mixed_norms, plain_mixed_norm, shell_mixed_norms, trapezoid_weights, y_constituents, y_norm, y_requests, MixedRequest,
    Order,
};
pub use source::{FreeWave, SpaceTime, Taper, Windowed};
pub use spec::{dyadic_weight, fmt17, lq, NormRecord, NormSpec};
pub use xsbq::{xsbq_norm, XsbqReport};
