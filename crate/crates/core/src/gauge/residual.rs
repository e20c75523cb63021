use num_complex::Complex64;

use super::antiderivative::centered_derivative;
use super::forward::{gauge_factor, GaugedPair};
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{derivative, hilbert, Field, Sign};

fn low_pass(f: &Field, j: i32) -> Field {
    f.apply_radial(|r| DyadicPartition::low_pass_weight(j, r))
}

/// Pieces of the localised equation for shell `j` at one time:
/// `-(1/2) Delta_j^+ d_x(u^2) = -u_{<j} d_x a + f1 + f2 + f3`, `a = Delta_j^+ u`.
struct Localized {
    a: Field,
    u_low: Field,
    f: Field,
}

fn localize(u: &Field, j: i32, margin: i32, dealias: f64) -> Result<Localized> {
    let part = DyadicPartition::new(u.grid());
    let shell = |f: &Field| part.shell_signed(f, j, Sign::Plus);
    let a = shell(u)?;
    let u_low = low_pass(u, j - margin);
    let u_high = u.sub(&u_low)?;
    let band = crate::spectral::project(&low_pass(u, j + 3).sub(&u_low)?, Sign::Plus);
    let d_band = derivative(&band, 1);
    let f1 = shell(&derivative(&u_low, 1).mul_dealiased(&band, dealias)?)?.scale(-1.0);
    let f2 = shell(&derivative(&u_high.mul_dealiased(&u_high, dealias)?, 1))?.scale(-0.5);
    let commutator = shell(&u_low.mul_dealiased(&d_band, dealias)?)?.sub(&u_low.mul_dealiased(&shell(&d_band)?, dealias)?)?;
    let f = f1.add(&f2)?.sub(&commutator)?;
    Ok(Localized { a, u_low, f })
}

/// Right-hand side of the renormalised equation for `w_j^+` at one time:
/// `S_{j-1}(F) f_j + S_{j-1}(q F) a + (eps S_{j-1}(u F) - u_{<j} S_{j-1}(F)) d_x a`,
/// where `d_t F - i d_x^2 F = q F`, i.e.
/// `q = -(i eps/2) H u_x + (eps/2) u_x + (i/4)(1 - eps) u^2`.
fn renormalized_rhs(u: &Field, big_u: &Field, j: i32, pair: &GaugedPair) -> Result<Field> {
    let s = &pair.settings;
    let eps = s.exponent_sign;
    let t = s.dealias;
    let loc = localize(u, j, s.margin, t)?;
    let factor = gauge_factor(big_u, eps);
    let sf = low_pass(&factor, j - 1);
    let ux = derivative(u, 1);
    let q = hilbert(&ux)
        .scale_complex(Complex64::new(0.0, -0.5 * eps))
        .add(&ux.scale(0.5 * eps))?
        .add(&u.mul_dealiased(u, t)?.scale_complex(Complex64::new(0.0, 0.25 * (1.0 - eps))))?;
    let group1 = sf.mul_dealiased(&loc.f, t)?;
    let group2 = low_pass(&q.mul_dealiased(&factor, t)?, j - 1).mul_dealiased(&loc.a, t)?;
    let da = derivative(&loc.a, 1);
    let s_uf = low_pass(&u.mul_dealiased(&factor, t)?, j - 1).scale(eps);
    let group3 = s_uf.mul_dealiased(&da, t)?.sub(&loc.u_low.mul_dealiased(&sf.mul_dealiased(&da, t)?, t)?)?;
    group1.add(&group2)?.add(&group3)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub j: i32,
    /// `||LHS - RHS|| / max(||LHS||, ||RHS||)` over interior frames; 0 when both vanish.
    pub residual: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub dt: f64,
}

/// Residual of `d_t w_j^+ - i d_x^2 w_j^+ = RHS` on the interior frames of a gauged
/// trajectory, the time derivative taken by a fourth-order centred stencil.
pub fn renorm_residual(pair: &GaugedPair, j: i32) -> Result<ResidualReport> {
    let part = pair.partition();
    if j < 0 || j > part.j_max() {
        return Err(Error::ShellOutOfRange { index: j, min: 0, max: part.j_max() });
    }
    let u = pair.u();
    let h = u.uniform_step().ok_or_else(|| Error::param("trajectory", "needs uniform time steps"))?;
    let m = u.len();
    if m < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: m });
    }
    let w: Vec<Field> = pair.shells.iter().map(|row| row[j as usize].clone()).collect();
    let (mut diff, mut lhs_sq, mut rhs_sq) = (0.0, 0.0, 0.0);
    let dx2 = |f: &Field| derivative(f, 2).scale_complex(Complex64::new(0.0, 1.0));
    for n in 2..m - 2 {
        let lhs = centered_derivative(&w, n, h)?.sub(&dx2(&w[n]))?;
        let rhs = renormalized_rhs(&u.frames()[n], &pair.antiderivative.big_u.frames()[n], j, pair)?;
        diff += lhs.distance(&rhs)?.powi(2);
        lhs_sq += lhs.norm_l2().powi(2);
        rhs_sq += rhs.norm_l2().powi(2);
    }
    let denom = lhs_sq.max(rhs_sq);
    let residual = if denom == 0.0 { 0.0 } else { (diff / denom).sqrt() };
    Ok(ResidualReport { j, residual, lhs_norm: lhs_sq.sqrt(), rhs_norm: rhs_sq.sqrt(), dt: h })
}

/// Sums the localised decomposition of `d_x Delta_j^+ (u^2)` over all shells and compares
/// with `d_x P^+ S_{j_max+1} (u^2)`. Returns the relative error.
pub fn paralinearization_check(u: &Field, margin: i32, dealias: f64) -> Result<f64> {
    let part = DyadicPartition::new(u.grid());
    let mut acc = Field::zeros(u.grid());
    for j in -1..=part.j_max() {
        let loc = localize(u, j, margin, dealias)?;
        // d_x Delta_j^+(u^2) = 2 u_{<j} d_x a - 2 f
        let term = loc.u_low.mul_dealiased(&derivative(&loc.a, 1), dealias)?.sub(&loc.f)?.scale(2.0);
        acc = acc.add(&term)?;
    }
    let sq = u.mul_dealiased(u, dealias)?;
    let target = derivative(&crate::spectral::project(&low_pass(&sq, part.j_max() + 1), Sign::Plus), 1);
    let n = target.norm_l2();
    Ok(if n == 0.0 { acc.norm_l2() } else { acc.distance(&target)? / n })
}
