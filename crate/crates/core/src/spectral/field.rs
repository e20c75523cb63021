use std::sync::OnceLock;

use num_complex::Complex64;

use super::fft;
use super::grid::Grid1D;
use crate::error::{Error, Result};

/// Whether a field is known to be real valued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realness {
    Real,
    Complex,
}

/// Samples of a function on a periodic grid, with a lazily cached spectrum.
///
/// Fields are immutable; every operation returns a new field, so the cached
/// spectrum can never go stale.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid1D,
    values: Vec<Complex64>,
    realness: Realness,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl Field {
    pub fn zeros(grid: Grid1D) -> Self {
        let n = grid.n_points();
        let spectrum = OnceLock::new();
        let _ = spectrum.set(vec![Complex64::new(0.0, 0.0); n]);
        Self { grid, values: vec![Complex64::new(0.0, 0.0); n], realness: Realness::Real, spectrum }
    }

    pub fn from_real(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::param("values", format!("expected {} samples, got {}", grid.n_points(), values.len())));
        }
        Ok(Self {
            grid,
            values: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
            realness: Realness::Real,
            spectrum: OnceLock::new(),
        })
    }

    pub fn from_complex(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::param("values", format!("expected {} samples, got {}", grid.n_points(), values.len())));
        }
        Ok(Self { grid, values, realness: Realness::Complex, spectrum: OnceLock::new() })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().into_iter().map(|x| Complex64::new(f(x), 0.0)).collect();
        Self { grid, values, realness: Realness::Real, spectrum: OnceLock::new() }
    }

    /// Builds a field from Fourier coefficients. For `Realness::Real` the
    /// coefficients are first projected onto Hermitian symmetry.
    pub fn from_spectrum(grid: Grid1D, mut spectrum: Vec<Complex64>, realness: Realness) -> Result<Self> {
        let n = grid.n_points();
        if spectrum.len() != n {
            return Err(Error::param("spectrum", format!("expected {n} coefficients, got {}", spectrum.len())));
        }
        if realness == Realness::Real {
            hermitize(&mut spectrum);
        }
        let mut values = spectrum.clone();
        fft::inverse(&mut values);
        if realness == Realness::Real {
            for v in values.iter_mut() {
                v.im = 0.0;
            }
        }
        let cache = OnceLock::new();
        let _ = cache.set(spectrum);
        Ok(Self { grid, values, realness, spectrum: cache })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn realness(&self) -> Realness {
        self.realness
    }

    pub fn is_real(&self) -> bool {
        self.realness == Realness::Real
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut buf = self.values.clone();
            fft::forward(&mut buf);
            buf
        })
    }

    pub fn check_same_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `dx * sum u`.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.dx()
    }

    pub fn mean(&self) -> Complex64 {
        self.spectrum()[0]
    }

    pub fn norm_l2(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_lp(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.norm_inf();
        }
        let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (s * self.grid.dx()).powf(1.0 / p)
    }

    /// Energy carried by the Fourier coefficients, `L * sum |c_m|^2`.
    pub fn spectral_energy(&self) -> f64 {
        self.spectrum().iter().map(|c| c.norm_sqr()).sum::<f64>() * self.grid.length()
    }

    /// Applies `c_m -> mult(m) c_m`. `out` says whether the result is real.
    pub fn apply_multiplier(&self, out: Realness, mult: impl Fn(i64, &Grid1D) -> Complex64) -> Field {
        let g = self.grid;
        let spec: Vec<Complex64> = self.spectrum().iter().enumerate().map(|(k, c)| c * mult(g.mode(k), &g)).collect();
        Field::from_spectrum(g, spec, out).expect("length preserved")
    }

    /// Real-valued radial multiplier `c_m -> w(|m|) c_m`; keeps realness.
    pub fn apply_radial(&self, w: impl Fn(u64) -> f64) -> Field {
        let r = self.realness;
        self.apply_multiplier(r, |m, _| Complex64::new(w(m.unsigned_abs()), 0.0))
    }

    pub fn map(&self, out: Realness, f: impl Fn(Complex64) -> Complex64) -> Field {
        let values: Vec<Complex64> = self.values.iter().map(|&v| f(v)).collect();
        let mut field = Field { grid: self.grid, values, realness: out, spectrum: OnceLock::new() };
        if out == Realness::Real {
            for v in field.values.iter_mut() {
                v.im = 0.0;
            }
        }
        field
    }

    pub fn scale(&self, a: f64) -> Field {
        let r = self.realness;
        self.map(r, |v| v * a)
    }

    pub fn scale_complex(&self, a: Complex64) -> Field {
        self.map(Realness::Complex, |v| v * a)
    }

    pub fn conj(&self) -> Field {
        let r = self.realness;
        self.map(r, |v| v.conj())
    }

    pub fn re(&self) -> Field {
        self.map(Realness::Real, |v| Complex64::new(v.re, 0.0))
    }

    fn zip(&self, other: &Field, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Field> {
        self.check_same_grid(other)?;
        let realness = if self.is_real() && other.is_real() { Realness::Real } else { Realness::Complex };
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Field { grid: self.grid, values, realness, spectrum: OnceLock::new() })
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.zip(other, |a, b| a - b)
    }

    /// Plain pointwise product on the grid, no dealiasing.
    pub fn mul_pointwise(&self, other: &Field) -> Result<Field> {
        self.zip(other, |a, b| a * b)
    }

    /// Product with both factors and the result truncated to `|m| < fraction * n/2`.
    /// With `fraction = 2/3` the kept modes are the exact product of the truncated factors.
    pub fn mul_dealiased(&self, other: &Field, fraction: f64) -> Result<Field> {
        self.check_same_grid(other)?;
        let a = self.truncate(fraction);
        let b = other.truncate(fraction);
        Ok(a.mul_pointwise(&b)?.truncate(fraction))
    }

    /// Zeroes every mode with `|m| >= fraction * n/2`.
    pub fn truncate(&self, fraction: f64) -> Field {
        let cut = self.grid.dealias_cutoff(fraction);
        let spec = self.spectrum();
        if spec.iter().enumerate().all(|(k, c)| self.grid.mode(k).abs() <= cut || *c == Complex64::new(0.0, 0.0)) {
            return self.clone();
        }
        self.apply_multiplier(self.realness, |m, _| if m.abs() <= cut { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    /// Largest |m| whose coefficient exceeds `tol` times the largest coefficient.
    pub fn bandwidth(&self, tol: f64) -> u64 {
        let spec = self.spectrum();
        let peak = spec.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0;
        }
        spec.iter().enumerate().filter(|(_, c)| c.norm() > tol * peak).map(|(k, _)| self.grid.mode(k).unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// L2 distance `|| self - other ||`.
    pub fn distance(&self, other: &Field) -> Result<f64> {
        Ok(self.sub(other)?.norm_l2())
    }
}

/// Replaces `c` by its Hermitian part, `(c_m + conj c_{-m}) / 2`.
fn hermitize(spec: &mut [Complex64]) {
    let n = spec.len();
    let orig = spec.to_vec();
    for k in 0..n {
        let partner = (n - k) % n;
        spec[k] = 0.5 * (orig[k] + orig[partner].conj());
    }
}
