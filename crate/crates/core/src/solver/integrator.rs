use num_complex::Complex64;

use super::invariants::ConservationLedger;
use crate::error::{Error, Result};
use crate::spectral::{fft_forward, fft_inverse, theta, Field, Grid1D, Realness, Trajectory};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub grid: Grid1D,
    /// Step; negative runs the flow backwards.
    pub dt: f64,
    /// Final time; must have the sign of `dt`.
    pub t_end: f64,
    /// Fraction of `n/2` kept by the dealiasing truncation.
    pub dealias: f64,
    /// Store every `record_every`-th step (the final state is always stored).
    pub record_every: usize,
}

impl SolverConfig {
    pub fn new(grid: Grid1D, dt: f64, t_end: f64) -> Self {
        Self { grid, dt, t_end, dealias: 2.0 / 3.0, record_every: 1 }
    }

    /// Step bound `0.5 / max |xi|` used as the default.
    pub fn default_dt(grid: Grid1D) -> f64 {
        0.5 / (grid.fundamental() * (grid.n_points() / 2) as f64)
    }

    fn validate(&self) -> Result<usize> {
        if !(self.dt.is_finite() && self.dt != 0.0) {
            return Err(Error::param("dt", "must be finite and nonzero"));
        }
        if !self.t_end.is_finite() || self.t_end * self.dt < 0.0 {
            return Err(Error::param("t_end", "must be finite with the sign of dt"));
        }
        if !(self.dealias > 0.0 && self.dealias <= 1.0) {
            return Err(Error::param("dealias", "must lie in (0, 1]"));
        }
        if self.record_every == 0 {
            return Err(Error::param("record_every", "must be positive"));
        }
        let steps = self.t_end / self.dt;
        let n = steps.round();
        if (steps - n).abs() > 1e-6 * n.max(1.0) {
            return Err(Error::param("t_end", "must be an integer multiple of dt"));
        }
        Ok(n as usize)
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub trajectory: Trajectory,
    pub ledger: ConservationLedger,
}

struct Stepper {
    e_full: Vec<Complex64>,
    e_half: Vec<Complex64>,
    ik_half: Vec<Complex64>,
    keep: Vec<bool>,
    buf: Vec<Complex64>,
}

impl Stepper {
    fn new(grid: Grid1D, dt: f64, dealias: f64) -> Self {
        let n = grid.n_points();
        let cut = grid.dealias_cutoff(dealias);
        let mut e_full = Vec::with_capacity(n);
        let mut e_half = Vec::with_capacity(n);
        let mut ik_half = Vec::with_capacity(n);
        let mut keep = Vec::with_capacity(n);
        for k in 0..n {
            let xi = grid.wavenumber(k);
            let th = if grid.is_nyquist(k) { 0.0 } else { theta(xi) };
            e_full.push(Complex64::from_polar(1.0, -th * dt));
            e_half.push(Complex64::from_polar(1.0, -th * dt / 2.0));
            let kept = grid.mode(k).abs() <= cut && !grid.is_nyquist(k);
            keep.push(kept);
            ik_half.push(if kept { Complex64::new(0.0, -0.5 * xi) } else { Complex64::new(0.0, 0.0) });
        }
        Self { e_full, e_half, ik_half, keep, buf: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// `-(1/2) i xi FFT(u^2)`, truncated.
    fn nonlinear(&mut self, v: &[Complex64], out: &mut [Complex64]) {
        self.buf.copy_from_slice(v);
        fft_inverse(&mut self.buf);
        for z in self.buf.iter_mut() {
            *z = Complex64::new(z.re * z.re, 0.0);
        }
        fft_forward(&mut self.buf);
        for ((o, b), w) in out.iter_mut().zip(&self.buf).zip(&self.ik_half) {
            *o = b * w;
        }
    }

    fn truncate(&self, v: &mut [Complex64]) {
        for (c, &k) in v.iter_mut().zip(&self.keep) {
            if !k {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// One integrating-factor RK4 step.
    fn step(&mut self, v: &mut [Complex64], dt: f64) {
        let n = v.len();
        let z = Complex64::new(0.0, 0.0);
        let (mut k1, mut k2, mut k3, mut k4) = (vec![z; n], vec![z; n], vec![z; n], vec![z; n]);
        let mut tmp = vec![z; n];
        self.nonlinear(v, &mut k1);
        for i in 0..n {
            tmp[i] = self.e_half[i] * (v[i] + 0.5 * dt * k1[i]);
        }
        self.nonlinear(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = self.e_half[i] * v[i] + 0.5 * dt * k2[i];
        }
        self.nonlinear(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = self.e_full[i] * v[i] + dt * self.e_half[i] * k3[i];
        }
        self.nonlinear(&tmp, &mut k4);
        for i in 0..n {
            v[i] = self.e_full[i] * v[i] + dt / 6.0 * (self.e_full[i] * k1[i] + 2.0 * self.e_half[i] * (k2[i] + k3[i]) + k4[i]);
        }
    }
}

/// Integrates from `u0` (real; truncated to the dealiased band first) and records
/// the trajectory together with the conservation ledger.
pub fn run(config: &SolverConfig, u0: &Field) -> Result<RunOutput> {
    let n_steps = config.validate()?;
    if u0.grid() != config.grid {
        return Err(Error::GridMismatch);
    }
    if !u0.is_real() {
        return Err(Error::NotReal);
    }
    let grid = config.grid;
    let mut st = Stepper::new(grid, config.dt, config.dealias);
    let mut v = u0.spectrum().to_vec();
    st.truncate(&mut v);
    let scale0 = v.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);

    let to_field = |v: &[Complex64]| Field::from_spectrum(grid, v.to_vec(), Realness::Real);
    let mut times = vec![0.0];
    let mut frames = vec![to_field(&v)?];
    for step in 1..=n_steps {
        st.step(&mut v, config.dt);
        let t = step as f64 * config.dt;
        let peak = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !peak.is_finite() || peak > 1e8 * scale0 {
            return Err(Error::BlowUp { t });
        }
        if step % config.record_every == 0 || step == n_steps {
            times.push(t);
            frames.push(to_field(&v)?);
        }
    }
    let trajectory = Trajectory::new(grid, times, frames)?;
    let ledger = ConservationLedger::from_trajectory(&trajectory);
    Ok(RunOutput { trajectory, ledger })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::free_evolution;

    #[test]
    fn linear_limit_matches_free_flow() {
        let g = Grid1D::new(64, 2.0 * std::f64::consts::PI).unwrap();
        let u0 = Field::from_fn(g, |x| 1e-7 * ((2.0 * x).sin() + (5.0 * x).cos()));
        let out = run(&SolverConfig::new(g, 0.01, 0.5), &u0).unwrap();
        let free = free_evolution(&u0, 0.5);
        assert!(out.trajectory.last().distance(&free).unwrap() < 1e-4 * u0.norm_l2());
    }

    #[test]
    fn rejects_bad_steps() {
        let g = Grid1D::new(64, 1.0).unwrap();
        let u0 = Field::zeros(g);
        assert!(run(&SolverConfig::new(g, 0.0, 1.0), &u0).is_err());
        assert!(run(&SolverConfig::new(g, 0.1, -1.0), &u0).is_err());
        assert!(run(&SolverConfig::new(g, 0.3, 1.0), &u0).is_err());
    }
}
