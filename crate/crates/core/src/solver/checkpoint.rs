//! Trajectory checkpoints: one JSON document
//! `{format, version, n_points, length, times: [t], frames: [[u_j]], solver?}` with real
//! frames. `solver` (`{dt, dealias}`) is present when the trajectory came from a run.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid1D, Trajectory};

pub const CHECKPOINT_FORMAT: &str = "bo-lab/trajectory";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Step and dealiasing fraction of the run that produced a checkpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverMeta {
    pub dt: f64,
    pub dealias: f64,
}

#[derive(Serialize, Deserialize)]
struct Document {
    format: String,
    version: u32,
    n_points: usize,
    length: f64,
    times: Vec<f64>,
    frames: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solver: Option<SolverMeta>,
}

pub fn write_checkpoint(path: &Path, traj: &Trajectory, solver: Option<SolverMeta>) -> Result<()> {
    if traj.frames().iter().any(|f| !f.is_real()) {
        return Err(Error::NotReal);
    }
    let doc = Document {
        format: CHECKPOINT_FORMAT.into(),
        version: CHECKPOINT_VERSION,
        n_points: traj.grid().n_points(),
        length: traj.grid().length(),
        times: traj.times().to_vec(),
        frames: traj.frames().iter().map(|f| f.real_values()).collect(),
        solver,
    };
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string(&doc).map_err(|e| Error::Checkpoint(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn write_trajectory(path: &Path, traj: &Trajectory) -> Result<()> {
    write_checkpoint(path, traj, None)
}

pub fn read_checkpoint(path: &Path) -> Result<(Trajectory, Option<SolverMeta>)> {
    let text = std::fs::read_to_string(path)?;
    let doc: Document = serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
    if doc.format != CHECKPOINT_FORMAT || doc.version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!("unsupported format {} v{}", doc.format, doc.version)));
    }
    let grid = Grid1D::new(doc.n_points, doc.length)?;
    let frames = doc.frames.into_iter().map(|v| Field::from_real(grid, v)).collect::<Result<Vec<_>>>()?;
    Ok((Trajectory::new(grid, doc.times, frames)?, doc.solver))
}

pub fn read_trajectory(path: &Path) -> Result<Trajectory> {
    Ok(read_checkpoint(path)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory {
        let grid = Grid1D::new(16, 3.0).unwrap();
        let frames = (0..3).map(|n| Field::from_fn(grid, |x| (x + n as f64).sin() / 3.0)).collect();
        Trajectory::new(grid, vec![0.0, 0.1, 0.2], frames).unwrap()
    }

    #[test]
    fn round_trip_is_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/t.json");
        let traj = sample();
        let meta = SolverMeta { dt: 1e-3, dealias: 2.0 / 3.0 };
        write_checkpoint(&path, &traj, Some(meta)).unwrap();
        let (back, m) = read_checkpoint(&path).unwrap();
        assert_eq!(m, Some(meta));
        assert_eq!(back.times(), traj.times());
        for (a, b) in back.frames().iter().zip(traj.frames()) {
            assert_eq!(a.real_values(), b.real_values());
        }
        write_trajectory(&path, &traj).unwrap();
        assert_eq!(read_checkpoint(&path).unwrap().1, None);
    }

    #[test]
    fn foreign_documents_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        std::fs::write(&path, r#"{"format":"other","version":1,"n_points":4,"length":1.0,"times":[],"frames":[]}"#).unwrap();
        assert!(matches!(read_checkpoint(&path), Err(Error::Checkpoint(_))));
        std::fs::write(&path, "not json").unwrap();
        assert!(matches!(read_checkpoint(&path), Err(Error::Checkpoint(_))));
    }
}
