pub mod ensemble;
pub mod error;
pub mod estimates;
pub mod gauge;
pub mod littlewood_paley;
pub mod norms;
pub mod runner;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
