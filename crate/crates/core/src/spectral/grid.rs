use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid of `n_points` samples on `[0, length)`.
///
/// Storage index `k` holds the signed mode `m = k` for `k < n/2` and `m = k - n`
/// otherwise, so the Nyquist slot `k = n/2` carries `m = -n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_points: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, length: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() || !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid { n_points, length });
        }
        Ok(Self { n_points, length })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// 2π/L, the spacing of the wavenumber lattice.
    pub fn fundamental(&self) -> f64 {
        2.0 * PI / self.length
    }

    pub fn mode(&self, k: usize) -> i64 {
        let n = self.n_points as i64;
        let k = k as i64;
        if k < n / 2 {
            k
        } else {
            k - n
        }
    }

    /// Storage index of signed mode `m`, if it is on the grid.
    pub fn index_of(&self, m: i64) -> Option<usize> {
        let n = self.n_points as i64;
        if m >= -n / 2 && m < n / 2 {
            Some(m.rem_euclid(n) as usize)
        } else {
            None
        }
    }

    pub fn is_nyquist(&self, k: usize) -> bool {
        k == self.n_points / 2
    }

    pub fn wavenumber(&self, k: usize) -> f64 {
        self.fundamental() * self.mode(k) as f64
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.wavenumber(k)).collect()
    }

    /// Largest |m| kept by a dealiasing truncation with the given fraction of n/2.
    pub fn dealias_cutoff(&self, fraction: f64) -> i64 {
        let c = fraction * self.n_points as f64 / 2.0;
        // strict inequality |m| < c
        let mut m = c.floor() as i64;
        if m as f64 >= c {
            m -= 1;
        }
        m
    }

    /// Same number of points on a box shorter by `lambda`.
    pub fn contracted(&self, lambda: f64) -> Result<Self> {
        Self::new(self.n_points, self.length / lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid1D::new(100, 1.0).is_err());
        assert!(Grid1D::new(4, 1.0).is_err());
        assert!(Grid1D::new(64, 0.0).is_err());
        assert!(Grid1D::new(64, f64::NAN).is_err());
        assert!(Grid1D::new(64, 2.0).is_ok());
    }

    #[test]
    fn mode_layout() {
        let g = Grid1D::new(8, 1.0).unwrap();
        let modes: Vec<i64> = (0..8).map(|k| g.mode(k)).collect();
        assert_eq!(modes, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for k in 0..8 {
            assert_eq!(g.index_of(g.mode(k)), Some(k));
        }
        assert!(g.is_nyquist(4));
    }

    #[test]
    fn two_thirds_cutoff() {
        let g = Grid1D::new(1024, 1.0).unwrap();
        assert_eq!(g.dealias_cutoff(2.0 / 3.0), 341);
        let g = Grid1D::new(96usize.next_power_of_two(), 1.0).unwrap();
        assert_eq!(g.dealias_cutoff(2.0 / 3.0), 42);
        assert_eq!(g.dealias_cutoff(0.75), 47);
    }
}
