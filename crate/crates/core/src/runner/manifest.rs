use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Written next to the outputs of every run, also when the run fails.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub kind: String,
    pub seed: u64,
    pub config_path: String,
    pub created_unix: u64,
    pub status: String,
    pub error: Option<String>,
    pub partition_id: Option<String>,
    /// `+1` when the dispersion is `xi |xi|`; resolved by a residual test at startup.
    pub dispersion_sign: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub summary: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}
