use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::{ExperimentConfig, InitialData};
use super::manifest::Manifest;
use crate::ensemble::{random_real_field, rng};
use crate::error::{Error, Result};
use crate::estimates::{flow_holder_experiment, persistence_run, reports_csv, run_case, SuiteParams};
use crate::gauge::{gauge_forward, gauge_inverse, norm_equivalence, renorm_residual, GaugeSettings};
use crate::littlewood_paley::DyadicPartition;
use crate::norms::{besov_norm, fmt17, mixed_norm, sobolev_norm, xsbq_norm, y_norm, NormRecord, NormSpec, Windowed};
use crate::solver::{read_checkpoint, run, write_checkpoint, PeriodicSoliton, SolverConfig, SolverMeta};
use crate::spectral::{Field, Realness, Trajectory};

pub(super) struct Context<'a> {
    pub config: &'a ExperimentConfig,
    pub config_dir: PathBuf,
    pub out_dir: PathBuf,
    pub manifest: &'a mut Manifest,
}

impl Context<'_> {
    fn write(&mut self, name: &str, body: &str) -> Result<()> {
        std::fs::write(self.out_dir.join(name), body)?;
        self.manifest.outputs.push(name.to_string());
        Ok(())
    }

    fn tolerance(&mut self, key: &str, v: f64) {
        self.manifest.tolerances.insert(key.into(), v);
    }

    fn summary(&mut self, key: &str, v: f64) {
        self.manifest.summary.insert(key.into(), v);
    }

    fn solver_config(&self) -> Result<SolverConfig> {
        let grid = self.config.grid()?;
        let s = self.config.solver.ok_or_else(|| Error::Config("`solver` section missing".into()))?;
        let mut c = SolverConfig::new(grid, s.dt.unwrap_or_else(|| SolverConfig::default_dt(grid)), s.t_end);
        c.record_every = s.record_every;
        c.dealias = s.dealias;
        Ok(c)
    }

    fn initial_field(&mut self) -> Result<Field> {
        let grid = self.config.grid()?;
        let u0 = match self.config.initial.as_ref() {
            Some(InitialData::Soliton { c, x0 }) => PeriodicSoliton::new(*c, *x0, grid.length())?.sample(grid, 0.0)?,
            Some(InitialData::Random { band, l2 }) => random_real_field(grid, band[0], band[1], Some(*l2), &mut rng(self.config.seed)),
            _ => return Err(Error::Config("`initial` must be a soliton or random preset here".into())),
        };
        let subtract = self.config.solver.map(|s| s.subtract_mean).unwrap_or(true);
        let mean = u0.mean().re;
        self.summary("initial_mean", mean);
        if subtract && mean != 0.0 {
            self.manifest.notes.push(format!("subtracted the initial mean {}", fmt17(mean)));
            return Ok(u0.map(Realness::Real, |z| z - mean));
        }
        Ok(u0)
    }

    /// The trajectory the experiment works on (a stored checkpoint or a fresh run), with
    /// the solver settings that produced it when known.
    fn trajectory(&mut self) -> Result<(Trajectory, Option<SolverMeta>)> {
        if let Some(InitialData::Checkpoint { path }) = self.config.initial.as_ref() {
            let p = if path.is_absolute() { path.clone() } else { self.config_dir.join(path) };
            return read_checkpoint(&p).map_err(|e| Error::Config(format!("`initial.path` {}: {e}", p.display())));
        }
        let cfg = self.solver_config()?;
        let u0 = self.initial_field()?;
        Ok((run(&cfg, &u0)?.trajectory, Some(SolverMeta { dt: cfg.dt, dealias: cfg.dealias })))
    }
}

pub(super) fn solve(ctx: &mut Context) -> Result<()> {
    let cfg = ctx.solver_config()?;
    let u0 = ctx.initial_field()?;
    let out = run(&cfg, &u0)?;
    let meta = SolverMeta { dt: cfg.dt, dealias: cfg.dealias };
    write_checkpoint(&ctx.out_dir.join("trajectory.json"), &out.trajectory, Some(meta))?;
    ctx.manifest.outputs.push("trajectory.json".into());
    ctx.write("ledger.csv", &out.ledger.to_csv())?;
    ctx.summary("mass_drift", out.ledger.mass_drift());
    ctx.summary("hamiltonian_drift", out.ledger.hamiltonian_drift());
    ctx.summary("mean_drift", out.ledger.mean_drift());
    ctx.summary("dt", cfg.dt);
    ctx.tolerance("dealias", cfg.dealias);
    ctx.manifest.partition_id = Some(DyadicPartition::new(cfg.grid).id());
    Ok(())
}

pub(super) fn norms(ctx: &mut Context) -> Result<()> {
    let (traj, _) = ctx.trajectory()?;
    let grid_id = DyadicPartition::new(traj.grid()).id();
    let mut body = format!("{}\n", NormRecord::CSV_HEADER);
    for entry in ctx.config.norms.clone() {
        let spec = entry.spec();
        let (value, taper_id) = match spec {
            // spatial norms: supremum over the recorded frames
            NormSpec::Besov { .. } => {
                let mut v: f64 = 0.0;
                for f in traj.frames() {
                    v = v.max(besov_norm(f, &spec)?);
                }
                (v, "sup_t".to_string())
            }
            NormSpec::Sobolev { s } => (traj.frames().iter().map(|f| sobolev_norm(f, s)).fold(0.0, f64::max), "sup_t".into()),
            NormSpec::Lb { .. } | NormSpec::Bl { .. } => (mixed_norm(&traj, &spec)?, "none".into()),
            NormSpec::Y { s } => (y_norm(&traj, s)?, "none".into()),
            NormSpec::Xsbq { s, b, q } => {
                let w = Windowed::covering(&traj)?;
                (xsbq_norm(&w, s, b, q)?.value, w.taper().id())
            }
        };
        let rec = NormRecord { spec, value, taper_id, grid_id: grid_id.clone() };
        body.push_str(&rec.csv_row());
        body.push('\n');
    }
    ctx.write("norms.csv", &body)?;
    ctx.manifest.partition_id = Some(grid_id);
    Ok(())
}

/// The same run from the first frame with half the solver step, recorded at the same times.
fn refined_run(u: &Trajectory, meta: SolverMeta) -> Result<Trajectory> {
    let h = u.uniform_step().ok_or_else(|| Error::param("trajectory", "needs uniform time steps"))?;
    let per_frame = (h / meta.dt).round() as usize;
    if per_frame == 0 || (per_frame as f64 * meta.dt - h).abs() > 1e-9 * h {
        return Err(Error::param("trajectory", "frame spacing is not a multiple of the solver step"));
    }
    let t_end = u.times()[u.len() - 1] - u.times()[0];
    let mut cfg = SolverConfig::new(u.grid(), 0.5 * meta.dt, t_end);
    cfg.record_every = 2 * per_frame;
    cfg.dealias = meta.dealias;
    run(&cfg, u.first()).map(|o| o.trajectory)
}

pub(super) fn gauge_check(ctx: &mut Context) -> Result<()> {
    let (traj, meta) = ctx.trajectory()?;
    let g = ctx.config.gauge.unwrap_or_default();
    let settings = GaugeSettings { psi_width: g.psi_width, margin: g.margin, ..GaugeSettings::default() };
    let part = DyadicPartition::new(traj.grid());
    let [lo, hi] = g.shells.unwrap_or([2, part.j_max() - 3]);
    if lo < 0 || hi > part.j_max() || lo > hi {
        return Err(Error::Config(format!("`gauge.shells` [{lo}, {hi}] outside [0, {}]", part.j_max())));
    }
    let pair = gauge_forward(&traj, &settings)?;
    let refined = match meta {
        Some(m) => Some(gauge_forward(&refined_run(&traj, m)?, &settings)?),
        None => {
            ctx.manifest.notes.push("no solver metadata: refinement factors left as nan".into());
            None
        }
    };
    let mut body = String::from("j,residual,dt,refinement_factor\n");
    let mut worst: f64 = 0.0;
    let mut weakest = f64::INFINITY;
    for j in lo..=hi {
        let r = renorm_residual(&pair, j)?;
        let factor = match &refined {
            Some(p) => {
                let half = renorm_residual(p, j)?.residual;
                if half > 0.0 {
                    r.residual / half
                } else {
                    f64::INFINITY
                }
            }
            None => f64::NAN,
        };
        worst = worst.max(r.residual);
        weakest = weakest.min(factor);
        let dt = meta.map_or(f64::NAN, |m| m.dt);
        writeln!(body, "{},{},{},{}", j, fmt17(r.residual), fmt17(dt), fmt17(factor)).expect("string");
    }
    ctx.write("residuals.csv", &body)?;
    ctx.summary("max_residual", worst);
    ctx.summary("min_refinement_factor", weakest);
    ctx.summary("dx_residual", pair.antiderivative.dx_residual()?);
    ctx.summary("dt_residual", pair.antiderivative.dt_residual()?);

    let eq = norm_equivalence(&traj, &pair.antiderivative, &settings)?;
    ctx.summary("l2_size", eq.size);
    ctx.summary("equivalence_lower_margin", eq.lower_margin);
    ctx.summary("equivalence_upper_excess", eq.upper_excess);
    if eq.size <= 0.5 {
        let inv = gauge_inverse(&pair, None, g.inverse_tol, 200)?;
        let mut rt: f64 = 0.0;
        for (a, b) in inv.u.frames().iter().zip(traj.frames()) {
            if b.norm_l2() > 0.0 {
                rt = rt.max(a.distance(b)? / b.norm_l2());
            }
        }
        ctx.summary("round_trip", rt);
        ctx.summary("mean_sweeps", inv.iterations.iter().sum::<usize>() as f64 / inv.iterations.len() as f64);
    } else {
        ctx.manifest.notes.push(format!("inverse skipped: ||u0||_2 = {} exceeds 0.5", fmt17(eq.size)));
    }
    ctx.tolerance("inverse_tol", g.inverse_tol);
    ctx.tolerance("mean_zero", 1e-12);
    ctx.tolerance("dealias", settings.dealias);
    ctx.manifest.partition_id = Some(part.id());
    Ok(())
}

pub(super) fn estimates(ctx: &mut Context) -> Result<()> {
    let est = ctx.config.estimates.clone().ok_or_else(|| Error::Config("`estimates` section missing".into()))?;
    let mut params = SuiteParams::with_seeds(est.seeds);
    params.s = est.s;
    params.j_range = est.j_range.map(|[a, b]| (a, b));
    let mut reports = Vec::new();
    let mut plateaus = String::from("estimate_id,param,sup_ratio,inf_ratio\n");
    let mut spreads = String::from("estimate_id,spread,octaves\n");
    for id in &est.cases {
        let out = run_case(id, &params)?;
        if let Some(p) = &out.plateau {
            for (param, max, min) in &p.envelope {
                writeln!(plateaus, "{},{},{},{}", id, param, fmt17(*max), fmt17(*min)).expect("string");
            }
            writeln!(spreads, "{},{},{}", id, fmt17(p.spread), p.octaves()).expect("string");
        }
        reports.extend(out.reports);
    }
    ctx.write("estimates.csv", &reports_csv(&reports))?;
    ctx.write("plateaus.csv", &plateaus)?;
    ctx.write("spreads.csv", &spreads)?;
    ctx.summary("reports", reports.len() as f64);
    ctx.tolerance("plateau_factor", 4.0);
    Ok(())
}

pub(super) fn flow_holder(ctx: &mut Context) -> Result<()> {
    let flow = ctx.config.flow.clone().ok_or_else(|| Error::Config("`flow` section missing".into()))?;
    let cfg = ctx.solver_config()?;
    let u0 = ctx.initial_field()?;
    let [lo, hi] = flow.perturbation_band;
    let p = random_real_field(cfg.grid, lo, hi, Some(1.0), &mut rng(ctx.config.seed.wrapping_add(1)));
    let report = flow_holder_experiment(&cfg, &u0, &p, &flow.eps)?;
    let mut diffs = String::from("norm,epsilon,difference\n");
    let mut fits = String::from("norm,slope,monotone\n");
    for fit in &report.fits {
        for (e, d) in &fit.points {
            writeln!(diffs, "{},{},{}", fit.norm, fmt17(*e), fmt17(*d)).expect("string");
        }
        writeln!(fits, "{},{},{}", fit.norm, fmt17(fit.slope), fit.monotone()).expect("string");
    }
    ctx.write("flow_differences.csv", &diffs)?;
    ctx.write("holder_fits.csv", &fits)?;
    let pers = persistence_run(&cfg, &u0)?;
    let mut body = String::from("t,h_half\n");
    for (t, h) in pers.times.iter().zip(&pers.h_half) {
        writeln!(body, "{},{}", fmt17(*t), fmt17(*h)).expect("string");
    }
    ctx.write("persistence.csv", &body)?;
    ctx.summary("persistence_max_ratio", pers.max_ratio);
    ctx.tolerance("persistence_factor", 3.0);
    Ok(())
}

pub(super) fn resolve_output(root: Option<&Path>, dir: &Path) -> PathBuf {
    match root {
        Some(r) if dir.is_relative() => r.join(dir),
        _ => dir.to_path_buf(),
    }
}
