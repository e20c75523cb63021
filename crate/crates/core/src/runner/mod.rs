//! Config-driven experiments writing CSV and JSON artifacts under an output directory.

mod config;
mod experiments;
mod manifest;

use std::path::{Path, PathBuf};

pub use config::{EstimatesSection, ExperimentConfig, FlowSection, GaugeSection, GridSection, InitialData, Kind, NormEntry, SolverSection};
pub use manifest::Manifest;

use crate::error::{Error, Result};

/// Overrides the directory that relative `output_dir` values resolve against.
pub const OUTPUT_ROOT_ENV: &str = "BO_LAB_OUTPUT_ROOT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Configuration and input problems map to 1, everything else to 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidParameter { .. } | Error::InvalidGrid { .. } | Error::Checkpoint(_) => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

/// Where the artifacts of a run went.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub manifest: Manifest,
}

fn now_unix() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Loads the config, checks it against the subcommand, runs it, and writes the
/// manifest. Output root: `root` if given, else `$BO_LAB_OUTPUT_ROOT`, else the
/// working directory.
pub fn run_experiment(kind: Kind, config_path: &Path, root: Option<&Path>) -> Result<RunSummary> {
    let config = ExperimentConfig::load(config_path)?;
    if config.kind != kind {
        return Err(Error::Config(format!("`kind` is `{}` but the subcommand is `{}`", config.kind.name(), kind.name())));
    }
    let env_root = std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from);
    let root = root.map(Path::to_path_buf).or(env_root);
    let out_dir = experiments::resolve_output(root.as_deref(), &config.output_dir);
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::Config(format!("cannot create {}: {e}", out_dir.display())))?;

    let mut manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        kind: kind.name().into(),
        seed: config.seed,
        config_path: config_path.display().to_string(),
        created_unix: now_unix(),
        status: "running".into(),
        dispersion_sign: crate::spectral::dispersion_sign(),
        ..Manifest::default()
    };
    let config_dir = config_path.parent().map(Path::to_path_buf).unwrap_or_default();
    let result = {
        let mut ctx = experiments::Context { config: &config, config_dir, out_dir: out_dir.clone(), manifest: &mut manifest };
        match kind {
            Kind::Solve => experiments::solve(&mut ctx),
            Kind::Norms => experiments::norms(&mut ctx),
            Kind::GaugeCheck => experiments::gauge_check(&mut ctx),
            Kind::Estimates => experiments::estimates(&mut ctx),
            Kind::FlowHolder => experiments::flow_holder(&mut ctx),
        }
    };
    match &result {
        Ok(()) => manifest.status = "ok".into(),
        Err(e) => {
            manifest.status = "failed".into();
            manifest.error = Some(e.to_string());
        }
    }
    manifest.write(&out_dir.join("manifest.json"))?;
    result.map(|()| RunSummary { out_dir, manifest })
}
