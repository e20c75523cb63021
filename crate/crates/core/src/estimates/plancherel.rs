//! The bilinear Plancherel identity behind the low-high gain:
//!
//! `int int |I(xi, t)|^2 dt dxi = pi int int |f(eta)|^2 |g(zeta)|^2 / |eta - zeta| deta dzeta`
//!
//! with `I(xi, t) = int exp(-it(eta - xi)^2) conj(g(eta - xi)) exp(it eta^2) f(eta) deta`.
//! Since `I(xi, t) = exp(-it xi^2) h_xi^(-2 t xi)` with `h_xi(eta) = f(eta) conj(g(eta - xi))`,
//! the time integral over `[-T, T]` is a frequency window `|omega| < 2T|xi|` of `|h_xi^|^2`.

use num_complex::Complex64;

use super::report::EstimateReport;
use crate::error::{Error, Result};
use crate::spectral::fft_forward;

/// Default lattice and span: the relative error of the identity is below `1e-3` on
/// [`random_pair`] data and shrinks when the span doubles.
pub const DEFAULT_D_ETA: f64 = 1.0 / 2048.0;
pub const DEFAULT_LEN: usize = 8192;
pub const DEFAULT_SPAN: f64 = 500.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlancherelOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

/// Profiles sampled at `eta_i = i * d_eta`, `i < len`. The length must be a power of two.
#[derive(Clone, Debug)]
pub struct SampledProfile {
    pub d_eta: f64,
    pub values: Vec<Complex64>,
}

impl SampledProfile {
    pub fn new(d_eta: f64, len: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self { d_eta, values: (0..len).map(|i| f(i as f64 * d_eta)).collect() }
    }

    fn support(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|v| v.norm_sqr() > 0.0)?;
        let last = self.values.iter().rposition(|v| v.norm_sqr() > 0.0)?;
        Some((first, last))
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self { d_eta: self.d_eta, values: self.values.iter().map(|v| v * a).collect() }
    }
}

/// Double-integral side, by the midpoint-free lattice sum (the lattice never hits
/// `eta = zeta` for disjoint supports).
pub fn plancherel_rhs(f: &SampledProfile, g: &SampledProfile) -> f64 {
    let h = f.d_eta;
    let mut acc = 0.0;
    for (i, a) in f.values.iter().enumerate() {
        let fa = a.norm_sqr();
        if fa == 0.0 {
            continue;
        }
        for (l, b) in g.values.iter().enumerate() {
            let gb = b.norm_sqr();
            if gb != 0.0 {
                acc += fa * gb / (i.abs_diff(l) as f64 * h);
            }
        }
    }
    std::f64::consts::PI * acc * h * h
}

/// Time-integrated side over `t in [-time_span, time_span]`.
pub fn plancherel_lhs(f: &SampledProfile, g: &SampledProfile, time_span: f64) -> f64 {
    let n = f.values.len();
    let h = f.d_eta;
    let period = n as f64 * h;
    let d_omega = 2.0 * std::f64::consts::PI / period;
    let mut total = 0.0;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for s in -(n as i64 - 1)..(n as i64) {
        if s == 0 {
            continue;
        }
        let mut any = false;
        for (i, slot) in buf.iter_mut().enumerate() {
            let l = i as i64 - s;
            *slot = if (0..n as i64).contains(&l) { f.values[i] * g.values[l as usize].conj() } else { Complex64::new(0.0, 0.0) };
            any |= slot.norm_sqr() > 0.0;
        }
        if !any {
            continue;
        }
        fft_forward(&mut buf);
        let xi = s as f64 * h;
        let window = 2.0 * time_span * xi.abs();
        // |H(omega_k)|^2 with H = d_eta * n * c_k
        let energy: f64 = buf
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                let m = if *k < n / 2 { *k as f64 } else { *k as f64 - n as f64 };
                (m * d_omega).abs() < window || (*k == n / 2 && std::f64::consts::PI / h < window)
            })
            .map(|(_, c)| c.norm_sqr())
            .sum::<f64>()
            * (h * n as f64).powi(2)
            * d_omega;
        total += energy / (2.0 * xi.abs()) * h;
    }
    total
}

/// Both sides and their relative difference. Supports must be disjoint with a gap.
pub fn plancherel_bilinear_identity(f: &SampledProfile, g: &SampledProfile, time_span: f64) -> Result<PlancherelOutcome> {
    if f.values.len() != g.values.len() || f.d_eta != g.d_eta || !f.values.len().is_power_of_two() {
        return Err(Error::GridMismatch);
    }
    if !(time_span.is_finite() && time_span > 0.0) {
        return Err(Error::param("time_span", "must be positive"));
    }
    let (Some(sf), Some(sg)) = (f.support(), g.support()) else {
        return Err(Error::param("profiles", "both profiles must be nonzero"));
    };
    if !(sf.1 < sg.0 || sg.1 < sf.0) {
        return Err(Error::param("profiles", "supports overlap"));
    }
    let lhs = plancherel_lhs(f, g, time_span);
    let rhs = plancherel_rhs(f, g);
    Ok(PlancherelOutcome { lhs, rhs, rel_err: (lhs - rhs).abs() / rhs })
}

/// Closed form for indicators of `[a, b]` and `[c, d]` with `d < a`:
/// `pi int int 1/(eta - zeta) = -pi [H(b-d) - H(b-c) - H(a-d) + H(a-c)]`, `H(x) = x ln x - x`.
pub fn indicator_rhs(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let hh = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() - x };
    -std::f64::consts::PI * (hh(b - d) - hh(b - c) - hh(a - d) + hh(a - c))
}

/// Indicator of `[lo, hi]` on the lattice with the endpoint samples weighted `1/sqrt 2`,
/// so that lattice sums of `|f|^2` are trapezoid sums.
pub fn lattice_indicator(d_eta: f64, len: usize, lo: f64, hi: f64) -> SampledProfile {
    let tol = 1e-9 * d_eta;
    SampledProfile::new(d_eta, len, |eta| {
        if (eta - lo).abs() < tol || (eta - hi).abs() < tol {
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
        } else if eta > lo && eta < hi {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `f` on `[2.5, 3.5]` and `g` on `[0.5, 1.5]`: lattice indicators times
/// `1 + 0.3 sum_k a_k exp(i (2 pi k eta + phi_k))` with Gaussian `a_k`, `k = 1..3`.
pub fn random_pair(d_eta: f64, len: usize, seed: u64) -> (SampledProfile, SampledProfile) {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let mut rng = crate::ensemble::rng(seed);
    let mut modulate = |p: SampledProfile| {
        let coeffs: Vec<(f64, f64)> =
            (0..3).map(|_| (rng.sample::<f64, _>(StandardNormal), rng.gen_range(0.0..std::f64::consts::TAU))).collect();
        let values = p
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let eta = i as f64 * d_eta;
                let m: Complex64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, (a, phi))| 0.3 * a * Complex64::from_polar(1.0, std::f64::consts::TAU * (k + 1) as f64 * eta + phi))
                    .sum();
                v * (1.0 + m)
            })
            .collect();
        SampledProfile { d_eta, values }
    };
    let f = modulate(lattice_indicator(d_eta, len, 2.5, 3.5));
    let g = modulate(lattice_indicator(d_eta, len, 0.5, 1.5));
    (f, g)
}

/// The identity on [`random_pair`] data as reports: `lhs` the time-integrated side,
/// `rhs_scale` the double integral.
pub fn plancherel_reports(d_eta: f64, len: usize, time_span: f64, seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    seeds
        .iter()
        .map(|&seed| {
            let (f, g) = random_pair(d_eta, len, seed);
            let out = plancherel_bilinear_identity(&f, &g, time_span)?;
            Ok(EstimateReport::new("plancherel", [None; 6], "", seed, out.lhs, out.rhs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = 1.0 / 128.0;
    const LEN: usize = 1024;

    #[test]
    fn indicator_closed_form_matches_midpoint_quadrature() {
        let (a, b, c, d) = (2.5, 3.5, 0.5, 1.5);
        let n = 2000;
        let (he, hz) = ((b - a) / n as f64, (d - c) / n as f64);
        let mut acc = 0.0;
        for i in 0..n {
            let eta = a + (i as f64 + 0.5) * he;
            for l in 0..n {
                acc += 1.0 / (eta - c - (l as f64 + 0.5) * hz);
            }
        }
        let quad = std::f64::consts::PI * acc * he * hz;
        assert!((quad - indicator_rhs(a, b, c, d)).abs() < 1e-6 * quad);
    }

    #[test]
    fn lattice_rhs_approaches_closed_form() {
        let f = lattice_indicator(H, LEN, 2.5, 3.5);
        let g = lattice_indicator(H, LEN, 0.5, 1.5);
        let exact = indicator_rhs(2.5, 3.5, 0.5, 1.5);
        assert!((plancherel_rhs(&f, &g) - exact).abs() < 1e-3 * exact);
    }

    #[test]
    fn both_sides_scale_with_squared_amplitudes() {
        let (f, g) = random_pair(H, LEN, 4);
        let base = plancherel_bilinear_identity(&f, &g, 50.0).unwrap();
        let (a, b) = (Complex64::new(0.0, 2.0), Complex64::new(0.5, 0.5));
        let scaled = plancherel_bilinear_identity(&f.scale(a), &g.scale(b), 50.0).unwrap();
        let factor = a.norm_sqr() * b.norm_sqr();
        assert!((scaled.lhs - factor * base.lhs).abs() < 1e-12 * scaled.lhs);
        assert!((scaled.rhs - factor * base.rhs).abs() < 1e-12 * scaled.rhs);
        assert!((scaled.rel_err - base.rel_err).abs() < 1e-10);
    }

    #[test]
    fn rhs_is_symmetric() {
        let (f, g) = random_pair(H, LEN, 1);
        let (x, y) = (plancherel_rhs(&f, &g), plancherel_rhs(&g, &f));
        assert!((x - y).abs() < 1e-13 * x);
    }

    #[test]
    fn rejects_overlap_and_bad_span() {
        let f = lattice_indicator(H, LEN, 1.0, 2.0);
        let g = lattice_indicator(H, LEN, 1.5, 2.5);
        assert!(plancherel_bilinear_identity(&f, &g, 10.0).is_err());
        let g = lattice_indicator(H, LEN, 3.0, 4.0);
        assert!(plancherel_bilinear_identity(&f, &g, 0.0).is_err());
        assert!(plancherel_bilinear_identity(&f, &lattice_indicator(H, 512, 3.0, 4.0), 10.0).is_err());
    }
}
