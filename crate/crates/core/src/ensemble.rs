//! Reproducible random data: Gaussian Fourier coefficients on prescribed mode sets.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::spectral::{Field, Grid1D, Realness};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real mean-zero field with independent standard Gaussian coefficients on
/// `lo <= |m| <= hi`, scaled to the given L2 norm (left unscaled if `norm` is `None`).
pub fn random_real_field(grid: Grid1D, lo: u64, hi: u64, norm: Option<f64>, rng: &mut ChaCha8Rng) -> Field {
    let n = grid.n_points();
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    let top = hi.min((n / 2 - 1) as u64);
    for m in lo.max(1)..=top {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        let c = Complex64::new(re, im);
        spec[m as usize] = c;
        spec[n - m as usize] = c.conj();
    }
    let f = Field::from_spectrum(grid, spec, Realness::Real).expect("matching length");
    match norm {
        Some(target) if f.norm_l2() > 0.0 => f.scale(target / f.norm_l2()),
        _ => f,
    }
}

/// Like [`random_real_field`] with magnitudes random but all phases aligned so that the
/// field peaks at `x_c` (for focused wave packets).
pub fn focused_real_field(grid: Grid1D, lo: u64, hi: u64, x_c: f64, rng: &mut ChaCha8Rng) -> Field {
    let n = grid.n_points();
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    let top = hi.min((n / 2 - 1) as u64);
    for m in lo.max(1)..=top {
        let a: f64 = StandardNormal.sample(rng);
        let xi = grid.fundamental() * m as f64;
        let c = Complex64::from_polar(a.abs(), -xi * x_c);
        spec[m as usize] = c;
        spec[n - m as usize] = c.conj();
    }
    Field::from_spectrum(grid, spec, Realness::Real).expect("matching length")
}
