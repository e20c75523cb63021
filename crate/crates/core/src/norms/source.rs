//! Space-time sample sources: stored trajectories, exact free waves, and tapered views.

use std::borrow::Cow;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::littlewood_paley::smooth_step;
use crate::spectral::{theta, Field, Grid1D, Realness, Trajectory};

/// Uniformly or non-uniformly sampled space-time field, accessed frame by frame in
/// Fourier space. `column` gives the time series of one spatial mode.
pub trait SpaceTime {
    fn grid(&self) -> Grid1D;
    fn times(&self) -> &[f64];
    fn frame_spectrum(&self, n: usize) -> Cow<'_, [Complex64]>;
    fn is_real(&self) -> bool;

    fn column(&self, kx: usize) -> Vec<Complex64> {
        (0..self.times().len()).map(|n| self.frame_spectrum(n)[kx]).collect()
    }

    fn frame(&self, n: usize) -> Field {
        let r = if self.is_real() { Realness::Real } else { Realness::Complex };
        Field::from_spectrum(self.grid(), self.frame_spectrum(n).into_owned(), r).expect("matching length")
    }

    /// Spatial mode indices that may carry energy; `None` means all of them.
    fn active_modes(&self) -> Option<Vec<usize>> {
        None
    }

    fn uniform_step(&self) -> Option<f64> {
        let t = self.times();
        if t.len() < 2 {
            return None;
        }
        let h = t[1] - t[0];
        t.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs()).then_some(h)
    }
}

impl SpaceTime for Trajectory {
    fn grid(&self) -> Grid1D {
        Trajectory::grid(self)
    }

    fn times(&self) -> &[f64] {
        Trajectory::times(self)
    }

    fn frame_spectrum(&self, n: usize) -> Cow<'_, [Complex64]> {
        Cow::Borrowed(self.frames()[n].spectrum())
    }

    fn is_real(&self) -> bool {
        self.frames().iter().all(|f| f.is_real())
    }

    fn frame(&self, n: usize) -> Field {
        self.frames()[n].clone()
    }
}

/// Exact linear solution `exp(-i t theta) c_m(0)` sampled at the given times.
#[derive(Clone, Debug)]
pub struct FreeWave {
    grid: Grid1D,
    spectrum: Vec<Complex64>,
    thetas: Vec<f64>,
    times: Vec<f64>,
    real: bool,
}

impl FreeWave {
    pub fn new(u0: &Field, times: Vec<f64>) -> Self {
        let grid = u0.grid();
        let thetas = (0..grid.n_points()).map(|k| if grid.is_nyquist(k) { 0.0 } else { theta(grid.wavenumber(k)) }).collect();
        let mut spectrum = u0.spectrum().to_vec();
        spectrum[grid.n_points() / 2] = Complex64::new(0.0, 0.0);
        Self { grid, spectrum, thetas, times, real: u0.is_real() }
    }

    /// Uniform times `t0 + n dt`, `n < count`.
    pub fn uniform(u0: &Field, t0: f64, dt: f64, count: usize) -> Self {
        Self::new(u0, (0..count).map(|n| t0 + n as f64 * dt).collect())
    }

    pub fn initial(&self) -> Field {
        let r = if self.real { Realness::Real } else { Realness::Complex };
        Field::from_spectrum(self.grid, self.spectrum.clone(), r).expect("matching length")
    }

    /// Materializes the frames into a trajectory.
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let frames = (0..self.times.len()).map(|n| self.frame(n)).collect();
        Trajectory::new(self.grid, self.times.clone(), frames)
    }
}

impl SpaceTime for FreeWave {
    fn grid(&self) -> Grid1D {
        self.grid
    }

    fn times(&self) -> &[f64] {
        &self.times
    }

    fn frame_spectrum(&self, n: usize) -> Cow<'_, [Complex64]> {
        let t = self.times[n];
        Cow::Owned(
            self.spectrum
                .iter()
                .zip(&self.thetas)
                .map(|(c, th)| if c.norm_sqr() == 0.0 { *c } else { c * Complex64::from_polar(1.0, -t * th) })
                .collect(),
        )
    }

    fn is_real(&self) -> bool {
        self.real
    }

    fn column(&self, kx: usize) -> Vec<Complex64> {
        let (c, th) = (self.spectrum[kx], self.thetas[kx]);
        if c.norm_sqr() == 0.0 {
            return vec![c; self.times.len()];
        }
        self.times.iter().map(|t| c * Complex64::from_polar(1.0, -t * th)).collect()
    }

    fn active_modes(&self) -> Option<Vec<usize>> {
        Some((0..self.spectrum.len()).filter(|&k| self.spectrum[k].norm_sqr() > 0.0).collect())
    }
}

/// Smooth time window on `[t0, t0 + span]`: zero on the outer 5% at each end, one on
/// the central half, `exp(-1/x)`-glued ramps in between (C-infinity).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taper {
    pub t0: f64,
    pub span: f64,
}

impl Taper {
    const RAMP_START: f64 = 0.05;
    const RAMP_END: f64 = 0.25;

    pub fn new(t0: f64, span: f64) -> Result<Self> {
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::param("span", "must be positive"));
        }
        Ok(Self { t0, span })
    }

    /// Window matching the first and last sample times of a source.
    pub fn covering(times: &[f64]) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: times.len() });
        }
        Self::new(times[0], times[times.len() - 1] - times[0])
    }

    pub fn value(&self, t: f64) -> f64 {
        let x = (t - self.t0) / self.span;
        let d = x.min(1.0 - x);
        smooth_step((d - Self::RAMP_START) / (Self::RAMP_END - Self::RAMP_START))
    }

    pub fn id(&self) -> String {
        format!("exp-glue-window/ramp={}-{}/span={}", Self::RAMP_START, Self::RAMP_END, self.span)
    }
}

/// A source multiplied by a taper in time.
pub struct Windowed<'a, S: SpaceTime + ?Sized> {
    inner: &'a S,
    taper: Taper,
    weights: Vec<f64>,
}

impl<'a, S: SpaceTime + ?Sized> Windowed<'a, S> {
    pub fn new(inner: &'a S, taper: Taper) -> Self {
        let weights = inner.times().iter().map(|&t| taper.value(t)).collect();
        Self { inner, taper, weights }
    }

    /// Taper spanning the whole sampled interval.
    pub fn covering(inner: &'a S) -> Result<Self> {
        Ok(Self::new(inner, Taper::covering(inner.times())?))
    }

    pub fn taper(&self) -> Taper {
        self.taper
    }
}

impl<S: SpaceTime + ?Sized> SpaceTime for Windowed<'_, S> {
    fn grid(&self) -> Grid1D {
        self.inner.grid()
    }

    fn times(&self) -> &[f64] {
        self.inner.times()
    }

    fn frame_spectrum(&self, n: usize) -> Cow<'_, [Complex64]> {
        let w = self.weights[n];
        Cow::Owned(self.inner.frame_spectrum(n).iter().map(|c| c * w).collect())
    }

    fn is_real(&self) -> bool {
        self.inner.is_real()
    }

    fn column(&self, kx: usize) -> Vec<Complex64> {
        self.inner.column(kx).into_iter().zip(&self.weights).map(|(c, w)| c * w).collect()
    }

    fn active_modes(&self) -> Option<Vec<usize>> {
        self.inner.active_modes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taper_shape() {
        let t = Taper::new(0.0, 1.0).unwrap();
        assert_eq!(t.value(0.0), 0.0);
        assert_eq!(t.value(0.04), 0.0);
        assert_eq!(t.value(0.5), 1.0);
        assert_eq!(t.value(0.25), 1.0);
        assert_eq!(t.value(0.75), 1.0);
        assert!((t.value(0.15) - 0.5).abs() < 1e-12);
        assert!((t.value(0.1) - t.value(0.9)).abs() < 1e-12);
    }

    #[test]
    fn free_wave_matches_materialized_frames() {
        let g = Grid1D::new(32, 6.0).unwrap();
        let u0 = Field::from_fn(g, |x| (x * 2.0 * std::f64::consts::PI / 6.0).sin());
        let w = FreeWave::uniform(&u0, 0.0, 0.1, 5);
        let traj = w.to_trajectory().unwrap();
        for kx in 0..32 {
            let a = w.column(kx);
            let b = SpaceTime::column(&traj, kx);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-14);
            }
        }
    }
}
