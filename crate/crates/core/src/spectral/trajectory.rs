use super::field::Field;
use super::grid::Grid1D;
use crate::error::{Error, Result};

/// Time-ordered frames on a shared grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    grid: Grid1D,
    times: Vec<f64>,
    frames: Vec<Field>,
}

impl Trajectory {
    pub fn new(grid: Grid1D, times: Vec<f64>, frames: Vec<Field>) -> Result<Self> {
        if times.len() != frames.len() || times.is_empty() {
            return Err(Error::param("frames", "need one frame per time and at least one frame"));
        }
        if frames.iter().any(|f| f.grid() != grid) {
            return Err(Error::GridMismatch);
        }
        let dir = if times.len() > 1 { (times[1] - times[0]).signum() } else { 1.0 };
        if times.windows(2).any(|w| (w[1] - w[0]) * dir <= 0.0) {
            return Err(Error::param("times", "must be strictly monotone"));
        }
        Ok(Self { grid, times, frames })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn frames(&self) -> &[Field] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn first(&self) -> &Field {
        &self.frames[0]
    }

    pub fn last(&self) -> &Field {
        &self.frames[self.frames.len() - 1]
    }

    /// Common spacing when the times are uniform to relative 1e-9.
    pub fn uniform_step(&self) -> Option<f64> {
        if self.times.len() < 2 {
            return None;
        }
        let h = self.times[1] - self.times[0];
        let ok = self.times.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());
        ok.then_some(h)
    }

    pub fn map_frames(&self, f: impl Fn(&Field) -> Field) -> Result<Trajectory> {
        Trajectory::new(self.grid, self.times.clone(), self.frames.iter().map(f).collect())
    }

    /// Frames `start..end` as a new trajectory.
    pub fn slice(&self, start: usize, end: usize) -> Result<Trajectory> {
        Trajectory::new(self.grid, self.times[start..end].to_vec(), self.frames[start..end].to_vec())
    }
}
