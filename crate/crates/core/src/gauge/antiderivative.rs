use super::GaugeSettings;
use crate::error::{Error, Result};
use crate::spectral::{antiderivative as spectral_antiderivative, derivative, hilbert, Field, Grid1D, Trajectory};

/// Gaussian bump centred at `L/2` with standard deviation `width * L`, scaled so that
/// its grid integral is exactly 1.
pub fn averaging_profile(grid: Grid1D, width: f64) -> Field {
    let l = grid.length();
    let sd = width * l;
    let raw = Field::from_fn(grid, |x| (-(x - l / 2.0).powi(2) / (2.0 * sd * sd)).exp());
    raw.scale(1.0 / raw.integral().re)
}

fn inner(a: &Field, b: &Field) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| x.re * y.re).sum::<f64>() * a.grid().dx()
}

/// Cumulative integral of uniformly sampled values, fourth order when `len >= 4`.
pub fn cumulative_integral(values: &[f64], h: f64) -> Vec<f64> {
    let m = values.len();
    let mut out = vec![0.0; m];
    if m < 4 {
        for n in 1..m {
            out[n] = out[n - 1] + 0.5 * h * (values[n - 1] + values[n]);
        }
        return out;
    }
    let g = values;
    for n in 0..m - 1 {
        let piece = if n == 0 {
            9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]
        } else if n == m - 2 {
            g[m - 4] - 5.0 * g[m - 3] + 19.0 * g[m - 2] + 9.0 * g[m - 1]
        } else {
            -g[n - 1] + 13.0 * g[n] + 13.0 * g[n + 1] - g[n + 2]
        };
        out[n + 1] = out[n] + h / 24.0 * piece;
    }
    out
}

/// Fourth-order centred derivative at interior index `n` (needs `2 <= n < len - 2`).
pub fn centered_derivative(f: &[Field], n: usize, h: f64) -> Result<Field> {
    let a = f[n + 1].sub(&f[n - 1])?.scale(8.0);
    let b = f[n + 2].sub(&f[n - 2])?;
    Ok(a.sub(&b)?.scale(1.0 / (12.0 * h)))
}

/// `U = V - int Psi V + G(t)`, with `V` the mean-zero periodic primitive of `u` and
/// `G' = -int (H Psi') u - (1/2) int Psi u^2`, `G(0) = 0`.
#[derive(Clone, Debug)]
pub struct AntiDerivative {
    pub u: Trajectory,
    pub big_u: Trajectory,
    pub psi: Field,
    pub g_correction: Vec<f64>,
    pub dealias: f64,
}

impl AntiDerivative {
    pub fn new(u: &Trajectory, settings: &GaugeSettings) -> Result<Self> {
        let grid = u.grid();
        let psi = averaging_profile(grid, settings.psi_width);
        let h_dpsi = hilbert(&derivative(&psi, 1));
        let mut rates = Vec::with_capacity(u.len());
        let mut primitives = Vec::with_capacity(u.len());
        for f in u.frames() {
            if !f.is_real() {
                return Err(Error::NotReal);
            }
            let mean = f.mean().re;
            if mean.abs() > 1e-12 * f.norm_inf().max(1.0) {
                return Err(Error::NonZeroMean { mean });
            }
            let v = spectral_antiderivative(f, 1e-12)?;
            let sq = f.mul_dealiased(f, settings.dealias)?;
            rates.push(-inner(&h_dpsi, f) - 0.5 * inner(&psi, &sq));
            primitives.push(v);
        }
        let g_correction = match u.uniform_step() {
            Some(h) => cumulative_integral(&rates, h),
            None if u.len() == 1 => vec![0.0],
            None => {
                let t = u.times();
                let mut out = vec![0.0; u.len()];
                for n in 1..u.len() {
                    out[n] = out[n - 1] + 0.5 * (t[n] - t[n - 1]) * (rates[n - 1] + rates[n]);
                }
                out
            }
        };
        let frames = primitives
            .iter()
            .zip(&g_correction)
            .map(|(v, &g)| {
                let shift = g - inner(&psi, v);
                v.map(crate::spectral::Realness::Real, |z| z + shift)
            })
            .collect();
        let big_u = Trajectory::new(grid, u.times().to_vec(), frames)?;
        Ok(Self { u: u.clone(), big_u, psi, g_correction, dealias: settings.dealias })
    }

    /// `max_t ||d_x U - u|| / ||u||`.
    pub fn dx_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (big, u) in self.big_u.frames().iter().zip(self.u.frames()) {
            let n = u.norm_l2();
            if n > 0.0 {
                worst = worst.max(derivative(big, 1).distance(u)? / n);
            }
        }
        Ok(worst)
    }

    /// Space-time relative residual of `d_t U = -H u_x - u^2/2` at interior frames,
    /// with a fourth-order centred difference in time.
    pub fn dt_residual(&self) -> Result<f64> {
        let h = self.u.uniform_step().ok_or_else(|| Error::param("trajectory", "needs uniform time steps"))?;
        let m = self.u.len();
        if m < 5 {
            return Err(Error::TooFewSamples { needed: 5, got: m });
        }
        let (mut err, mut size) = (0.0, 0.0);
        for n in 2..m - 2 {
            let dt_u = centered_derivative(self.big_u.frames(), n, h)?;
            let u = &self.u.frames()[n];
            let rhs = hilbert(&derivative(u, 1)).add(&u.mul_dealiased(u, self.dealias)?.scale(0.5))?.scale(-1.0);
            err += dt_u.distance(&rhs)?.powi(2);
            size += rhs.norm_l2().powi(2);
        }
        Ok(if size == 0.0 { err.sqrt() } else { (err / size).sqrt() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_integrates_to_one() {
        let g = Grid1D::new(128, 30.0).unwrap();
        let p = averaging_profile(g, 1.0 / 16.0);
        assert!((p.integral().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cumulative_quadrature_is_exact_for_cubics() {
        let h = 0.1;
        let t: Vec<f64> = (0..12).map(|i| i as f64 * h).collect();
        let g: Vec<f64> = t.iter().map(|t| 1.0 + t - 2.0 * t * t + 0.5 * t.powi(3)).collect();
        let cum = cumulative_integral(&g, h);
        for (c, t) in cum.iter().zip(&t) {
            let exact = t + t * t / 2.0 - 2.0 * t.powi(3) / 3.0 + 0.125 * t.powi(4);
            assert!((c - exact).abs() < 1e-13);
        }
    }
}
