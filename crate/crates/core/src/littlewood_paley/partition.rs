use num_complex::Complex64;

use super::profile::phi_hat;
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid1D, Realness};

/// Dyadic Littlewood-Paley partition on a periodic grid, in units of the mode index `r = |m|`.
///
/// `S_j` has symbol `phi_hat(r / 2^j)`, `Delta_j = S_{j+1} - S_j` for `0 <= j <= j_max`,
/// and `Delta_{-1} = S_0`. The blocks sum to `S_{j_max+1}`, which is the identity on
/// fields band-limited to `r <= n/4`. Indices below `-1` give `phi_hat(r 2^{-j})`,
/// which keeps only the zero mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DyadicPartition {
    grid: Grid1D,
    j_max: i32,
}

impl DyadicPartition {
    pub fn new(grid: Grid1D) -> Self {
        let log2_half = (grid.n_points() / 2).trailing_zeros() as i32;
        Self { grid, j_max: log2_half - 2 }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn id(&self) -> String {
        format!("exp-glue-dyadic/n={}/L={}/jmax={}", self.grid.n_points(), self.grid.length(), self.j_max)
    }

    pub fn low_pass_weight(j: i32, r: u64) -> f64 {
        phi_hat(r as f64 / f64::powi(2.0, j))
    }

    pub fn shell_weight(j: i32, r: u64) -> f64 {
        if j < 0 {
            Self::low_pass_weight(0, r)
        } else {
            Self::low_pass_weight(j + 1, r) - Self::low_pass_weight(j, r)
        }
    }

    /// Closed mode range `[lo, hi]` on which shell `j` can be nonzero.
    pub fn shell_support(j: i32) -> (u64, u64) {
        if j < 0 {
            (0, 1)
        } else {
            (1u64 << j, (1u64 << (j + 2)) - 1)
        }
    }

    fn check_shell(&self, j: i32) -> Result<()> {
        if j < -1 || j > self.j_max {
            return Err(Error::ShellOutOfRange { index: j, min: -1, max: self.j_max });
        }
        Ok(())
    }

    pub fn check(&self, u: &Field) -> Result<()> {
        if u.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `S_j u` for any `j <= j_max + 1`.
    pub fn low_pass(&self, u: &Field, j: i32) -> Result<Field> {
        self.check(u)?;
        if j > self.j_max + 1 {
            return Err(Error::ShellOutOfRange { index: j, min: i32::MIN, max: self.j_max + 1 });
        }
        Ok(u.apply_radial(|r| Self::low_pass_weight(j, r)))
    }

    /// `Delta_j u` for `-1 <= j <= j_max`.
    pub fn shell(&self, u: &Field, j: i32) -> Result<Field> {
        self.check(u)?;
        self.check_shell(j)?;
        Ok(u.apply_radial(|r| Self::shell_weight(j, r)))
    }

    /// `Delta_j P^± u`: shell `j` restricted to one frequency half-line (zero mode halved).
    pub fn shell_signed(&self, u: &Field, j: i32, sign: crate::spectral::Sign) -> Result<Field> {
        self.check(u)?;
        self.check_shell(j)?;
        let s = sign.value() as i64;
        let half = -(self.grid.n_points() as i64) / 2;
        Ok(u.apply_multiplier(Realness::Complex, |m, _| {
            let w = Self::shell_weight(j, m.unsigned_abs());
            let side = if m == 0 || m == half {
                0.5
            } else if m.signum() == s {
                1.0
            } else {
                0.0
            };
            Complex64::new(w * side, 0.0)
        }))
    }

    /// All blocks `Delta_{-1} .. Delta_{j_max}` in order.
    pub fn shells(&self, u: &Field) -> Result<Vec<Field>> {
        (-1..=self.j_max).map(|j| self.shell(u, j)).collect()
    }

    /// `Delta_j (S_{j+3} - S_{j-3})`-type helper: symbol `S_hi - S_lo`.
    pub fn band(&self, u: &Field, lo: i32, hi: i32) -> Result<Field> {
        self.check(u)?;
        Ok(u.apply_radial(|r| Self::low_pass_weight(hi, r) - Self::low_pass_weight(lo, r)))
    }

    /// Largest mode kept by the partition, `n/4`.
    pub fn resolved_band(&self) -> u64 {
        (self.grid.n_points() / 4) as u64
    }
}
