//! Scaling `u(x, t) -> lambda u(lambda x, lambda^2 t)`, realised on grids with the same
//! point count and a box shorter by `lambda`, so that it is exact sample by sample.

use crate::error::{Error, Result};
use crate::spectral::{Field, Realness, Trajectory};

pub fn rescale_field(u: &Field, lambda: f64) -> Result<Field> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::param("lambda", "must be positive"));
    }
    let grid = u.grid().contracted(lambda)?;
    let values = u.values().iter().map(|v| v * lambda).collect();
    let f = Field::from_complex(grid, values)?;
    Ok(if u.is_real() { f.re() } else { f })
}

pub fn rescale_trajectory(traj: &Trajectory, lambda: f64) -> Result<Trajectory> {
    let frames = traj.frames().iter().map(|f| rescale_field(f, lambda)).collect::<Result<Vec<_>>>()?;
    let grid = frames[0].grid();
    let times = traj.times().iter().map(|t| t / (lambda * lambda)).collect();
    Trajectory::new(grid, times, frames)
}

/// Repeats a field `copies` times onto a grid with `copies` times the points and length.
pub fn tile(u: &Field, copies: usize) -> Result<Field> {
    let g = u.grid();
    let grid = crate::spectral::Grid1D::new(g.n_points() * copies, g.length() * copies as f64)?;
    let values: Vec<_> = (0..copies).flat_map(|_| u.values().iter().copied()).collect();
    let f = Field::from_complex(grid, values)?;
    Ok(if u.realness() == Realness::Real { f.re() } else { f })
}
