//! Commutators of dyadic multipliers with multiplication by a Lipschitz function.
//!
//! For a radial symbol with kernel `k`, `|[S_j, g] f| <= ||g'||_inf (|x| |k|)_j * |f|`,
//! so the scaled ratio is bounded by `int |x| |k(x)| dx` of the unit-scale kernel.

use num_complex::Complex64;

use super::report::EstimateReport;
use crate::ensemble::{random_real_field, rng};
use crate::error::{Error, Result};
use crate::littlewood_paley::{low_pass_commutator, phi_hat, psi_hat, shell_commutator, DyadicPartition};
use crate::norms::FreeWave;
use crate::spectral::{derivative, fft_inverse, Field, Grid1D};

pub const LOW_PASS: &str = "commutator-low-pass";
pub const SHELL_DERIVATIVE: &str = "commutator-shell-derivative";
pub const MIXED: &str = "commutator-mixed";

/// `int |x|^order |k(x)| dx` for the line kernel `k` of the even symbol `symbol(|xi|)`,
/// supported in `|xi| <= 4`. The kernel is sampled through one large FFT on a period
/// of 8192, far beyond its (root-exponential) decay length.
pub fn kernel_moment(symbol: impl Fn(f64) -> f64, order: i32) -> f64 {
    let n: usize = 1 << 21;
    let period = 8192.0;
    let dxi = 2.0 * std::f64::consts::PI / period;
    let mut buf: Vec<Complex64> = (0..n)
        .map(|l| {
            let m = if l < n / 2 { l as f64 } else { l as f64 - n as f64 };
            Complex64::new(symbol((m * dxi).abs()), 0.0)
        })
        .collect();
    fft_inverse(&mut buf);
    let dx = period / n as f64;
    buf.iter()
        .enumerate()
        .map(|(i, k)| {
            let x = if i < n / 2 { i as f64 } else { i as f64 - n as f64 } * dx;
            x.abs().powi(order) * k.re.abs() * dxi / (2.0 * std::f64::consts::PI)
        })
        .sum::<f64>()
        * dx
}

pub fn kernel_first_moment(symbol: impl Fn(f64) -> f64) -> f64 {
    kernel_moment(symbol, 1)
}

/// `||phi||_{L^1}` of the low-pass kernel: the operator norm of every `S_j` on
/// `L^inf`. It exceeds 1 because the kernel takes negative values.
pub fn low_pass_kernel_l1() -> f64 {
    kernel_moment(phi_hat, 0)
}

/// `||theta||_1` for the low-pass profile.
pub fn low_pass_moment() -> f64 {
    kernel_first_moment(phi_hat)
}

/// `||theta||_1` for the shell profile.
pub fn shell_moment() -> f64 {
    kernel_first_moment(psi_hat)
}

fn sup_derivative(g: &Field) -> f64 {
    derivative(g, 1).norm_inf()
}

/// `||[S_j, g] f||_2 / (2^{-j} kappa^{-1} ||g'||_inf ||f||_2)` with `kappa` the grid's
/// fundamental wavenumber; `f` sits on the transition band `[2^j, 2^{j+1}]` of `S_j`,
/// `g` on modes `1..=g_band`.
pub fn low_pass_commutator_ratio(grid: Grid1D, g_band: u64, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    let part = DyadicPartition::new(grid);
    if j_range.1 + 1 > part.j_max() + 1 || j_range.0 < 0 {
        return Err(Error::ShellOutOfRange { index: j_range.1, min: 0, max: part.j_max() });
    }
    let mut out = Vec::new();
    for &seed in seeds {
        let mut r = rng(seed);
        let g = random_real_field(grid, 1, g_band, Some(1.0), &mut r);
        let gp = sup_derivative(&g);
        for j in j_range.0..=j_range.1 {
            let lo = 1u64 << j;
            let f = random_real_field(grid, lo, 2 * lo, Some(1.0), &mut r);
            let c = low_pass_commutator(&part, j, &g, &f, 1.0)?;
            let scale = gp * f.norm_l2() / (f64::powi(2.0, j) * grid.fundamental());
            out.push(EstimateReport::shell(LOW_PASS, j, seed, c.norm_l2(), scale));
        }
    }
    Ok(out)
}

/// `||[Delta_j, g] d_x f||_2 / (||g'||_inf ||f||_2)` with `f` on the support of shell `j`.
pub fn shell_derivative_commutator_ratio(grid: Grid1D, g_band: u64, j_range: (i32, i32), seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    let part = DyadicPartition::new(grid);
    if j_range.1 > part.j_max() || j_range.0 < 0 {
        return Err(Error::ShellOutOfRange { index: j_range.1, min: 0, max: part.j_max() });
    }
    let mut out = Vec::new();
    for &seed in seeds {
        let mut r = rng(seed);
        let g = random_real_field(grid, 1, g_band, Some(1.0), &mut r);
        let gp = sup_derivative(&g);
        for j in j_range.0..=j_range.1 {
            let (lo, hi) = DyadicPartition::shell_support(j);
            let f = random_real_field(grid, lo, hi, Some(1.0), &mut r);
            let c = shell_commutator(&part, j, &g, &derivative(&f, 1), 1.0)?;
            out.push(EstimateReport::shell(SHELL_DERIVATIVE, j, seed, c.norm_l2(), gp * f.norm_l2()));
        }
    }
    Ok(out)
}

/// Space-time version: `||[Delta_j, g] f||_{L^2_x L^2_t}` against
/// `2^{-j} kappa^{-1} ||g'||_{L^2_x L^inf_t} ||f||_{L^inf_x L^2_t}`, with `g` and `f` free
/// waves sampled at `n_times` points of `[0, t_span]`.
pub fn mixed_commutator_ratio(
    grid: Grid1D,
    g_band: u64,
    j_range: (i32, i32),
    t_span: f64,
    n_times: usize,
    seeds: &[u64],
) -> Result<Vec<EstimateReport>> {
    use crate::norms::{plain_mixed_norm, MixedRequest, Order};
    let part = DyadicPartition::new(grid);
    if j_range.1 > part.j_max() || j_range.0 < 0 {
        return Err(Error::ShellOutOfRange { index: j_range.1, min: 0, max: part.j_max() });
    }
    if n_times < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n_times });
    }
    let dt = t_span / (n_times - 1) as f64;
    let inf = f64::INFINITY;
    let mut out = Vec::new();
    for &seed in seeds {
        let mut r = rng(seed);
        let g0 = random_real_field(grid, 1, g_band, Some(1.0), &mut r);
        let gw = FreeWave::uniform(&g0, 0.0, dt, n_times).to_trajectory()?;
        let gp = gw.map_frames(|f| derivative(f, 1))?;
        let gp_norm = plain_mixed_norm(&gp, MixedRequest { order: Order::SpaceOuter, p: 2.0, rho: inf });
        for j in j_range.0..=j_range.1 {
            let (lo, hi) = DyadicPartition::shell_support(j);
            let f0 = random_real_field(grid, lo, hi, Some(1.0), &mut r);
            let fw = FreeWave::uniform(&f0, 0.0, dt, n_times).to_trajectory()?;
            let h = crate::spectral::Trajectory::new(
                grid,
                fw.times().to_vec(),
                (0..n_times).map(|n| shell_commutator(&part, j, &gw.frames()[n], &fw.frames()[n], 1.0)).collect::<Result<Vec<_>>>()?,
            )?;
            let lhs = plain_mixed_norm(&h, MixedRequest { order: Order::SpaceOuter, p: 2.0, rho: 2.0 });
            let f_norm = plain_mixed_norm(&fw, MixedRequest { order: Order::SpaceOuter, p: inf, rho: 2.0 });
            let scale = gp_norm * f_norm / (f64::powi(2.0, j) * grid.fundamental());
            out.push(EstimateReport::shell(MIXED, j, seed, lhs, scale));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct quadrature: `k(x) = (1/pi) int_0^4 a(xi) cos(x xi) dxi`, then
    /// `2 int_0^X x^order |k(x)| dx` by the trapezoid rule.
    fn direct_moment(symbol: impl Fn(f64) -> f64, order: i32) -> f64 {
        let n_xi = 8000;
        let h_xi = 4.0 / n_xi as f64;
        let a: Vec<f64> = (0..=n_xi).map(|i| symbol(i as f64 * h_xi)).collect();
        let kernel = |x: f64| {
            let s: f64 = a.iter().enumerate().map(|(i, v)| v * (x * i as f64 * h_xi).cos()).sum();
            (s - 0.5 * (a[0] + a[n_xi] * (4.0 * x).cos())) * h_xi / std::f64::consts::PI
        };
        let h_x = 0.02;
        let n_x = 15000;
        let mut acc = 0.0;
        for i in 0..=n_x {
            let x = i as f64 * h_x;
            let w = if i == 0 || i == n_x { 0.5 } else { 1.0 };
            acc += w * x.powi(order) * kernel(x).abs();
        }
        2.0 * acc * h_x
    }

    #[test]
    fn kernel_moments_match_direct_quadrature() {
        for (order, tol) in [(0, 1e-4), (1, 1e-3)] {
            let fast = kernel_moment(phi_hat, order);
            let slow = direct_moment(phi_hat, order);
            assert!((fast - slow).abs() < tol * slow, "order {order}: {fast} vs {slow}");
        }
    }

    #[test]
    fn low_pass_kernel_is_not_positive() {
        // signed integral is phi_hat(0) = 1, so an L1 norm above 1 means negative lobes
        let l1 = low_pass_kernel_l1();
        assert!(l1 > 1.01 && l1 < 3.0, "{l1}");
    }
}
