//! Estimates for the linear flow: Strichartz, maximal function, local smoothing and
//! the bilinear low-high gain, measured on focused wave packets.
//!
//! Packets live on the `2 pi`-torus (mode = wavenumber) and focus at `(pi, T/2)`. The
//! time span is short enough that the fastest packet of the sweep never wraps around,
//! so the torus behaves like the line over the window.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use super::report::EstimateReport;
use crate::ensemble::rng;
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::norms::trapezoid_weights;
use crate::norms::{mixed_norms, xsbq_norm, FreeWave, NormSpec, SpaceTime, Taper, Windowed};
use crate::spectral::{fft_inverse, theta, Field, Grid1D, Realness};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearRegime {
    pub grid: Grid1D,
    pub t_span: f64,
    pub n_times: usize,
}

impl LinearRegime {
    /// Regime for shells up to `j_hi`: `N = 2^{j_hi + 5}` so quartic integrands are
    /// resolved, span `0.9 pi / 2^{j_hi+2}`, and time samples resolving the top
    /// frequency with 25% headroom.
    pub fn for_shells(j_hi: i32) -> Result<Self> {
        if !(1..=14).contains(&j_hi) {
            return Err(Error::param("j_hi", "must lie in 1..=14"));
        }
        let grid = Grid1D::new(1usize << (j_hi + 5), 2.0 * std::f64::consts::PI)?;
        let top = f64::powi(2.0, j_hi + 2);
        let t_span = 0.9 * std::f64::consts::PI / top;
        let n_times = (1.25 * theta(top).abs() * t_span / std::f64::consts::PI).ceil() as usize + 1;
        Ok(Self { grid, t_span, n_times })
    }

    pub fn dt(&self) -> f64 {
        self.t_span / (self.n_times - 1) as f64
    }

    pub fn taper(&self) -> Taper {
        Taper::new(0.0, self.t_span).expect("positive span")
    }

    /// Real packet on the support of shell `j`: Gaussian magnitudes times the shell
    /// weight, phases chosen so that it focuses at `x = L/2`, `t = T/2`.
    pub fn packet(&self, j: i32, seed: u64) -> Field {
        let mut r = rng(seed);
        let n = self.grid.n_points();
        let (x_c, t_c) = (0.5 * self.grid.length(), 0.5 * self.t_span);
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        let (lo, hi) = DyadicPartition::shell_support(j);
        for m in lo.max(1)..=hi.min(n as u64 / 2 - 1) {
            let a: f64 = StandardNormal.sample(&mut r);
            let w = DyadicPartition::shell_weight(j, m);
            let xi = self.grid.fundamental() * m as f64;
            let c = Complex64::from_polar(a.abs() * w, -xi * x_c + theta(xi) * t_c);
            spec[m as usize] = c;
            spec[n - m as usize] = c.conj();
        }
        Field::from_spectrum(self.grid, spec, Realness::Real).expect("matching length")
    }

    pub fn wave(&self, u0: &Field) -> FreeWave {
        FreeWave::uniform(u0, 0.0, self.dt(), self.n_times)
    }
}

/// Identifiers of the three single-function estimates.
pub const STRICHARTZ: &str = "strichartz";
pub const MAXIMAL: &str = "maximal";
pub const SMOOTHING: &str = "smoothing";
pub const BILINEAR: &str = "bilinear";

fn lhs_specs(s: f64) -> [NormSpec; 3] {
    let inf = f64::INFINITY;
    [
        NormSpec::Lb { rho: 4.0, s, p: inf, q: 1.0 },
        NormSpec::Bl { s: 0.0, p: 4.0, q: 1.0, rho: inf },
        NormSpec::Bl { s: s + 0.5, p: inf, q: 1.0, rho: 2.0 },
    ]
}

/// Strichartz, maximal and smoothing ratios for one tapered free wave, in that order.
/// Returns `None` for zero data.
pub fn single_ratios<S: SpaceTime + ?Sized>(src: &S, s: f64) -> Result<Option<[(f64, f64); 3]>> {
    let lhs = mixed_norms(src, &lhs_specs(s))?;
    let x_s = xsbq_norm(src, s, 0.5, 1.0)?.value;
    let x_q = xsbq_norm(src, 0.25, 0.5, 1.0)?.value;
    if x_s == 0.0 || x_q == 0.0 {
        return Ok(None);
    }
    Ok(Some([(lhs[0], x_s), (lhs[1], x_q), (lhs[2], x_s)]))
}

/// Runs [`single_ratios`] over `j_range x seeds`; report ids are the three estimates.
pub fn linear_estimates(regime: &LinearRegime, s: f64, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    let mut out = Vec::new();
    for j in j_range.0..=j_range.1 {
        for &seed in seeds {
            let wave = regime.wave(&regime.packet(j, seed));
            let src = Windowed::new(&wave, regime.taper());
            if let Some(r) = single_ratios(&src, s)? {
                for (id, (lhs, rhs)) in [STRICHARTZ, MAXIMAL, SMOOTHING].into_iter().zip(r) {
                    out.push(EstimateReport::shell(id, j, seed, lhs, rhs));
                }
            }
        }
    }
    Ok(out)
}

pub fn strichartz_ratio(regime: &LinearRegime, s: f64, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    Ok(linear_estimates(regime, s, j_range, seeds)?.into_iter().filter(|r| r.estimate_id == STRICHARTZ).collect())
}

pub fn maximal_ratio(regime: &LinearRegime, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    Ok(linear_estimates(regime, 0.0, j_range, seeds)?.into_iter().filter(|r| r.estimate_id == MAXIMAL).collect())
}

pub fn smoothing_ratio(regime: &LinearRegime, s: f64, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    Ok(linear_estimates(regime, s, j_range, seeds)?.into_iter().filter(|r| r.estimate_id == SMOOTHING).collect())
}

/// Zero-pads a spectrum to twice the length (for exact quadrature of products).
fn padded_values(spec: &[Complex64]) -> Vec<Complex64> {
    let n = spec.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (k, c) in spec.iter().enumerate() {
        if k == n / 2 {
            continue;
        }
        let m = if k < n / 2 { k } else { 2 * n - (n - k) };
        out[m] = *c;
    }
    fft_inverse(&mut out);
    out
}

/// `||S_{j-1} u Delta_j v||_{L^2_{t,x}}`, computed on a doubled grid so the quadrature
/// of the squared product is exact in space.
pub fn low_high_product_norm<A, B>(u: &A, v: &B, j: i32) -> Result<f64>
where
    A: SpaceTime + ?Sized,
    B: SpaceTime + ?Sized,
{
    let grid = u.grid();
    if grid != v.grid() || u.times() != v.times() {
        return Err(Error::GridMismatch);
    }
    let n = grid.n_points();
    let wt = trapezoid_weights(u.times());
    let low: Vec<f64> = (0..n).map(|k| DyadicPartition::low_pass_weight(j - 1, grid.mode(k).unsigned_abs())).collect();
    let shell: Vec<f64> = (0..n).map(|k| DyadicPartition::shell_weight(j, grid.mode(k).unsigned_abs())).collect();
    let dx = grid.dx() / 2.0;
    let mut acc = 0.0;
    for (t, &w) in wt.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let a: Vec<Complex64> = u.frame_spectrum(t).iter().zip(&low).map(|(c, s)| c * s).collect();
        let b: Vec<Complex64> = v.frame_spectrum(t).iter().zip(&shell).map(|(c, s)| c * s).collect();
        let (a, b) = (padded_values(&a), padded_values(&b));
        let space: f64 = a.iter().zip(&b).map(|(x, y)| (x * y).norm_sqr()).sum::<f64>() * dx;
        acc += w * space;
    }
    Ok(acc.sqrt())
}

/// Bilinear low-high ratios. `u` is a fixed packet in shell `j_low` (seeded by
/// `seed + 1_000_003`), `v` sweeps shells `j`; the reported ratio is
/// `2^{j/2} ||S_{j-1}u Delta_j v|| / (||u||_X ||v||_X)` with `X = X^{0,1/2,1}`.
pub fn bilinear_ratio(regime: &LinearRegime, j_low: i32, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    if j_range.0 < j_low + 3 {
        return Err(Error::param("j_range", "the swept shell must sit at least three octaves above the low packet"));
    }
    let mut out = Vec::new();
    for &seed in seeds {
        let uw = regime.wave(&regime.packet(j_low, seed.wrapping_add(1_000_003)));
        let u = Windowed::new(&uw, regime.taper());
        let xu = xsbq_norm(&u, 0.0, 0.5, 1.0)?.value;
        for j in j_range.0..=j_range.1 {
            let vw = regime.wave(&regime.packet(j, seed));
            let v = Windowed::new(&vw, regime.taper());
            let xv = xsbq_norm(&v, 0.0, 0.5, 1.0)?.value;
            let lhs = low_high_product_norm(&u, &v, j)? * f64::powf(2.0, 0.5 * j as f64);
            out.push(EstimateReport::new(BILINEAR, [Some(j), None, Some(j_low), None, None, None], "", seed, lhs, xu * xv));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_are_amplitude_invariant() {
        let regime = LinearRegime::for_shells(4).unwrap();
        let u0 = regime.packet(3, 5);
        let w1 = regime.wave(&u0);
        let w2 = regime.wave(&u0.scale(-7.5));
        let a = single_ratios(&Windowed::new(&w1, regime.taper()), 0.0).unwrap().unwrap();
        let b = single_ratios(&Windowed::new(&w2, regime.taper()), 0.0).unwrap().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.0 / x.1 - y.0 / y.1).abs() < 1e-10 * x.0 / x.1);
        }
    }

    #[test]
    fn wrong_smoothing_exponent_drifts() {
        // with half a derivative too many the ratio grows like 2^{j/2}
        let (lo, hi) = (3, 7);
        let regime = LinearRegime::for_shells(hi).unwrap();
        let sup_at = |j: i32, extra: f64| {
            (0..3)
                .map(|seed| {
                    let wave = regime.wave(&regime.packet(j, seed));
                    let src = Windowed::new(&wave, regime.taper());
                    let spec = NormSpec::Bl { s: 0.5 + extra, p: f64::INFINITY, q: 1.0, rho: 2.0 };
                    mixed_norms(&src, &[spec]).unwrap()[0] / xsbq_norm(&src, 0.0, 0.5, 1.0).unwrap().value
                })
                .fold(0.0, f64::max)
        };
        let right = sup_at(hi, 0.0) / sup_at(lo, 0.0);
        let wrong = sup_at(hi, 0.5) / sup_at(lo, 0.5);
        assert!(right < 2.0 && right > 0.5, "{right}");
        assert!(wrong > 3.0, "{wrong}");
    }

    #[test]
    fn regime_rejects_out_of_range_shells() {
        assert!(LinearRegime::for_shells(0).is_err());
        assert!(LinearRegime::for_shells(15).is_err());
    }
}
