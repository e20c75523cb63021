use num_complex::Complex64;

use super::antiderivative::AntiDerivative;
use super::GaugeSettings;
use crate::error::Result;
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{Field, Realness, Sign, Trajectory};

/// `exp(i eps U / 2)`, unimodular pointwise.
pub fn gauge_factor(big_u: &Field, eps: f64) -> Field {
    big_u.map(Realness::Complex, |z| Complex64::from_polar(1.0, 0.5 * eps * z.re))
}

/// A trajectory with its gauge transform, stored shell by shell.
#[derive(Clone, Debug)]
pub struct GaugedPair {
    pub antiderivative: AntiDerivative,
    /// `P^+ S_0 u` per frame.
    pub low: Vec<Field>,
    /// `w_j^+` for `j = 0..=j_max`, per frame.
    pub shells: Vec<Vec<Field>>,
    pub settings: GaugeSettings,
}

impl GaugedPair {
    pub fn u(&self) -> &Trajectory {
        &self.antiderivative.u
    }

    pub fn partition(&self) -> DyadicPartition {
        DyadicPartition::new(self.u().grid())
    }

    /// `w^+ = P^+ S_0 u + sum_j w_j^+` at frame `n`.
    pub fn w_plus(&self, n: usize) -> Result<Field> {
        let mut acc = self.low[n].clone();
        for s in &self.shells[n] {
            acc = acc.add(s)?;
        }
        Ok(acc)
    }

    /// `w = w^+ + conj(w^+)`, real.
    pub fn w(&self, n: usize) -> Result<Field> {
        Ok(self.w_plus(n)?.re().scale(2.0))
    }

    /// Real shell `w_j = w_j^+ + w_j^-` as a trajectory.
    pub fn w_shell_trajectory(&self, j: i32) -> Result<Trajectory> {
        let frames = self.shells.iter().map(|s| s[j as usize].re().scale(2.0)).collect();
        Trajectory::new(self.u().grid(), self.u().times().to_vec(), frames)
    }

    pub fn w_shell_plus_trajectory(&self, j: i32) -> Result<Trajectory> {
        let frames = self.shells.iter().map(|s| s[j as usize].clone()).collect();
        Trajectory::new(self.u().grid(), self.u().times().to_vec(), frames)
    }

    pub fn exponent_sign(&self) -> f64 {
        self.settings.exponent_sign
    }
}

/// Builds `U`, then `w_j^+ = S_{j-1}(F) Delta_j^+ u` for every shell. `S_{-1}` keeps the
/// zero mode, so every shell of `u` is represented.
pub fn gauge_forward(u: &Trajectory, settings: &GaugeSettings) -> Result<GaugedPair> {
    let antiderivative = AntiDerivative::new(u, settings)?;
    let (low, shells) = renormalized_shells(u, &antiderivative, settings)?;
    Ok(GaugedPair { antiderivative, low, shells, settings: *settings })
}

/// `P^+ S_0 u` and `S_{j-1}(exp(i eps V / 2)) Delta_j^+ u` per frame, with the phase taken
/// from the primitive `V` of a possibly different solution on the same time grid.
pub fn renormalized_shells(u: &Trajectory, by: &AntiDerivative, settings: &GaugeSettings) -> Result<(Vec<Field>, Vec<Vec<Field>>)> {
    if u.grid() != by.u.grid() || u.times() != by.u.times() {
        return Err(crate::error::Error::GridMismatch);
    }
    let part = DyadicPartition::new(u.grid());
    let mut low = Vec::with_capacity(u.len());
    let mut shells = Vec::with_capacity(u.len());
    for (f, big) in u.frames().iter().zip(by.big_u.frames()) {
        let factor = gauge_factor(big, settings.exponent_sign);
        low.push(part.shell_signed(f, -1, Sign::Plus)?);
        let mut row = Vec::with_capacity(part.j_max() as usize + 1);
        for j in 0..=part.j_max() {
            let sf = factor.apply_radial(|r| DyadicPartition::low_pass_weight(j - 1, r));
            let a = part.shell_signed(f, j, Sign::Plus)?;
            row.push(sf.mul_dealiased(&a, settings.dealias)?);
        }
        shells.push(row);
    }
    Ok((low, shells))
}
