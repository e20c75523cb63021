use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::{derivative, dispersion_sign, hilbert, Field, Grid1D};

/// Exact traveling wave of the periodic problem that reduces to the line soliton
/// `±4c / (1 + c^2 x^2)` as the period grows.
///
/// On a box of length `L`, with `kappa = 2π/L` and `gamma = kappa / c`,
/// `u(x) = polarity * 2 kappa sinh(gamma) / (cosh(gamma) - cos(kappa (x - x0)))`,
/// which equals the sum of the line soliton over all periodic images. It travels
/// at `polarity * kappa coth(gamma)`. The polarity is opposite to the dispersion sign:
/// with `H cos = sin` the wave is a trough moving left.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicSoliton {
    pub c: f64,
    pub x0: f64,
    pub length: f64,
}

impl PeriodicSoliton {
    pub fn new(c: f64, x0: f64, length: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::param("c", "must be positive"));
        }
        // the line profile at half a period must be small compared with the peak
        let ratio = 1.0 / (1.0 + (c * length / 2.0).powi(2));
        if ratio > 1e-2 {
            return Err(Error::InsufficientDecay { ratio });
        }
        Ok(Self { c, x0, length })
    }

    pub fn polarity(&self) -> f64 {
        -dispersion_sign()
    }

    fn kappa(&self) -> f64 {
        2.0 * PI / self.length
    }

    fn gamma(&self) -> f64 {
        self.kappa() / self.c
    }

    /// Exact propagation speed on the torus (signed).
    pub fn speed(&self) -> f64 {
        self.polarity() * self.kappa() / self.gamma().tanh()
    }

    /// Speed of the line soliton, `polarity * c`.
    pub fn line_speed(&self) -> f64 {
        self.polarity() * self.c
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        let (k, g) = (self.kappa(), self.gamma());
        let y = x - self.x0 - self.speed() * t;
        self.polarity() * 2.0 * k * g.sinh() / (g.cosh() - (k * y).cos())
    }

    /// Line soliton `polarity * 4c / (1 + c^2 x^2)` without images.
    pub fn line_value(&self, x: f64) -> f64 {
        self.polarity() * 4.0 * self.c / (1.0 + (self.c * x).powi(2))
    }

    pub fn sample(&self, grid: Grid1D, t: f64) -> Result<Field> {
        if (grid.length() - self.length).abs() > 1e-12 * self.length {
            return Err(Error::param("grid", "length differs from the soliton period"));
        }
        Ok(Field::from_fn(grid, |x| self.value(x, t)))
    }

    /// Relative spectral residual of the traveling ansatz, `||-v u' + H u'' + u u'||`
    /// over `||H u''||`, with `v` the speed.
    pub fn ansatz_residual(&self, grid: Grid1D) -> Result<f64> {
        let u = self.sample(grid, 0.0)?;
        let ux = derivative(&u, 1);
        let dispersive = hilbert(&derivative(&u, 2));
        let r = ux.scale(-self.speed()).add(&dispersive)?.add(&u.mul_pointwise(&ux)?)?;
        Ok(r.norm_l2() / dispersive.norm_l2())
    }

    /// Peak amplitude `4c` of the line soliton.
    pub fn peak(&self) -> f64 {
        4.0 * self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_sum_matches_closed_form() {
        let s = PeriodicSoliton::new(1.0, 3.0, 20.0).unwrap();
        for &x in &[0.0, 3.0, 7.5, 13.0] {
            let mut sum = 0.0;
            for n in -200000..=200000 {
                sum += s.line_value(x - 3.0 + n as f64 * 20.0);
            }
            assert!((sum - s.value(x, 0.0)).abs() < 1e-4, "{sum} {}", s.value(x, 0.0));
        }
    }

    #[test]
    fn speed_tends_to_c() {
        let short = PeriodicSoliton::new(1.0, 0.0, 50.0).unwrap();
        let long = PeriodicSoliton::new(1.0, 0.0, 500.0).unwrap();
        assert!((long.speed() - long.line_speed()).abs() < (short.speed() - short.line_speed()).abs());
        assert!((long.speed().abs() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn ansatz_residual_is_spectrally_small() {
        let grid = Grid1D::new(1024, 100.0).unwrap();
        let s = PeriodicSoliton::new(1.0, 50.0, 100.0).unwrap();
        assert!(s.ansatz_residual(grid).unwrap() < 1e-10);
        // the wrong speed leaves an O(1) residual
        let wrong = PeriodicSoliton { c: 1.0, x0: 50.0, length: 100.0 };
        let u = wrong.sample(grid, 0.0).unwrap();
        let ux = derivative(&u, 1);
        let r = ux.scale(wrong.speed()).add(&hilbert(&derivative(&u, 2))).unwrap().add(&u.mul_pointwise(&ux).unwrap()).unwrap();
        assert!(r.norm_l2() > 0.1 * ux.norm_l2());
    }

    #[test]
    fn narrow_box_rejected() {
        assert!(matches!(PeriodicSoliton::new(0.1, 0.0, 10.0), Err(Error::InsufficientDecay { .. })));
    }
}
