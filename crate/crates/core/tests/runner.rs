use std::path::{Path, PathBuf};
use std::process::Command;

use bo_lab::runner::{run_experiment, Kind, OUTPUT_ROOT_ENV};
use bo_lab::solver::read_checkpoint;

const SOLVE: &str = r#"
kind = "solve"
output_dir = "solve"
[grid]
n_points = 256
length = 60.0
[solver]
dt = 0.005
t_end = 0.5
record_every = 2
[initial]
preset = "soliton"
c = 1.0
x0 = 30.0
"#;

const GAUGE: &str = r#"
kind = "gauge-check"
output_dir = "gauge"
[initial]
preset = "checkpoint"
path = "out/solve/trajectory.json"
[gauge]
shells = [1, 3]
"#;

const NORMS: &str = r#"
kind = "norms"
seed = 1
output_dir = "norms"
[grid]
n_points = 64
length = 6.283185307179586
[solver]
dt = 0.002
t_end = 0.1
[initial]
preset = "random"
band = [1, 8]
l2 = 0.2
[[norms]]
family = "besov"
s = -0.5
p = 2.0
q = 1.0
[[norms]]
family = "y"
s = 0.25
[[norms]]
family = "xsbq"
s = 0.0
b = 0.5
q = 1.0
"#;

const FLOW: &str = r#"
kind = "flow-holder"
seed = 2
output_dir = "flow"
[grid]
n_points = 64
length = 6.283185307179586
[solver]
dt = 0.002
t_end = 0.1
[initial]
preset = "random"
band = [1, 3]
l2 = 0.5
[flow]
perturbation_band = [1, 5]
eps = [1e-1, 1e-2, 1e-3]
"#;

const ESTIMATES: &str = r#"
kind = "estimates"
output_dir = "estimates"
[estimates]
cases = ["sobolev", "block-vanishing", "commutator-shell-derivative"]
seeds = 2
"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read(p: PathBuf) -> String {
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn every_experiment_writes_its_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("out");

    let s = run_experiment(Kind::Solve, &write(dir.path(), "solve.toml", SOLVE), Some(&root)).unwrap();
    let (traj, meta) = read_checkpoint(&s.out_dir.join("trajectory.json")).unwrap();
    assert_eq!(traj.len(), 51);
    assert_eq!(meta.unwrap().dt, 0.005);
    assert!(read(s.out_dir.join("ledger.csv")).lines().count() > 2);
    assert_eq!(s.manifest.status, "ok");

    // the checkpoint path resolves against the config file's directory
    let g = run_experiment(Kind::GaugeCheck, &write(dir.path(), "gauge.toml", GAUGE), Some(&root)).unwrap();
    let residuals = read(g.out_dir.join("residuals.csv"));
    assert_eq!(residuals.lines().count(), 4);

    let n = run_experiment(Kind::Norms, &write(dir.path(), "norms.toml", NORMS), Some(&root)).unwrap();
    assert_eq!(read(n.out_dir.join("norms.csv")).lines().count(), 4);

    let f = run_experiment(Kind::FlowHolder, &write(dir.path(), "flow.toml", FLOW), Some(&root)).unwrap();
    assert!(read(f.out_dir.join("holder_fits.csv")).contains("C_t L2"));
    assert!(f.out_dir.join("persistence.csv").exists());

    let e = run_experiment(Kind::Estimates, &write(dir.path(), "est.toml", ESTIMATES), Some(&root)).unwrap();
    assert!(read(e.out_dir.join("estimates.csv")).lines().count() > 10);
    assert!(read(e.out_dir.join("plateaus.csv")).contains("sobolev"));

    for d in [&s.out_dir, &g.out_dir, &n.out_dir, &f.out_dir, &e.out_dir] {
        let m: serde_json::Value = serde_json::from_str(&read(d.join("manifest.json"))).unwrap();
        assert_eq!(m["status"], "ok");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "norms.toml", NORMS);
    let a = run_experiment(Kind::Norms, &cfg, Some(&dir.path().join("a"))).unwrap();
    let b = run_experiment(Kind::Norms, &cfg, Some(&dir.path().join("b"))).unwrap();
    assert_eq!(read(a.out_dir.join("norms.csv")), read(b.out_dir.join("norms.csv")));
    let cfg = write(dir.path(), "est.toml", ESTIMATES);
    let a = run_experiment(Kind::Estimates, &cfg, Some(&dir.path().join("a"))).unwrap();
    let b = run_experiment(Kind::Estimates, &cfg, Some(&dir.path().join("b"))).unwrap();
    assert_eq!(read(a.out_dir.join("estimates.csv")), read(b.out_dir.join("estimates.csv")));
}

#[test]
fn empty_estimate_list_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "e.toml", "kind = \"estimates\"\noutput_dir = \"e\"\n[estimates]\ncases = []\n");
    let s = run_experiment(Kind::Estimates, &cfg, Some(dir.path())).unwrap();
    assert_eq!(read(s.out_dir.join("estimates.csv")).lines().count(), 1);
}

fn bin(dir: &Path, sub: &str, cfg: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bo-lab")).arg(sub).arg(cfg).env(OUTPUT_ROOT_ENV, dir.join("env-root")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();

    let (code, _) = bin(p, "norms", &write(p, "ok.toml", NORMS));
    assert_eq!(code, 0);
    assert!(p.join("env-root/norms/norms.csv").exists());

    let (code, err) = bin(p, "norms", &write(p, "typo.toml", &NORMS.replace("t_end = 0.1", "t_end = 0.1\nt_ennd = 1")));
    assert_eq!(code, 1);
    assert!(err.contains("t_ennd"), "{err}");

    let (code, err) = bin(p, "solve", &write(p, "kind.toml", NORMS));
    assert_eq!(code, 1);
    assert!(err.contains("kind"), "{err}");

    let (code, _) = bin(p, "solve", &p.join("missing.toml"));
    assert_eq!(code, 1);

    let blowup = NORMS.replace("kind = \"norms\"", "kind = \"solve\"").replace("l2 = 0.2", "l2 = 1e4").replace("dt = 0.002", "dt = 0.05");
    let (code, err) = bin(p, "solve", &write(p, "blowup.toml", &blowup));
    assert_eq!(code, 2, "{err}");
    let m: serde_json::Value = serde_json::from_str(&read(p.join("env-root/norms/manifest.json"))).unwrap();
    assert_eq!(m["status"], "failed");
}
