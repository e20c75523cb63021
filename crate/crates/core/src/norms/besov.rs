use super::spec::{dyadic_weight, lq, NormSpec};
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::Field;

/// `||Delta_j f||_{L^p}` for `j = -1..=j_max` (index 0 holds `j = -1`).
pub fn shell_norms(f: &Field, p: f64) -> Result<Vec<f64>> {
    let part = DyadicPartition::new(f.grid());
    Ok(part.shells(f)?.iter().map(|s| s.norm_lp(p)).collect())
}

pub fn besov_norm(f: &Field, spec: &NormSpec) -> Result<f64> {
    spec.validate()?;
    match *spec {
        NormSpec::Besov { s, p, q } => {
            let norms = shell_norms(f, p)?;
            Ok(lq(norms.iter().enumerate().map(|(i, v)| dyadic_weight(i as i32 - 1, s) * v), q))
        }
        NormSpec::Sobolev { s } => Ok(sobolev_norm(f, s)),
        _ => Err(Error::param("spec", "besov_norm takes the besov or sobolev family")),
    }
}

/// `H^s` norm with weight `(1 + xi^2)^{s/2}` in physical units.
pub fn sobolev_norm(f: &Field, s: f64) -> f64 {
    let g = f.grid();
    let sum: f64 = f.spectrum().iter().enumerate().map(|(k, c)| (1.0 + g.wavenumber(k).powi(2)).powf(s) * c.norm_sqr()).sum();
    (sum * g.length()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid1D;

    #[test]
    fn single_mode_shell_value() {
        let g = Grid1D::new(256, 2.0 * std::f64::consts::PI).unwrap();
        // mode 6 sits in shells 1 (weight phi(3/4)-phi(3/2)... ) and 2
        let f = Field::from_fn(g, |x| (6.0 * x).cos());
        let unit = f.scale(1.0 / f.norm_l2());
        let v = besov_norm(&unit, &NormSpec::Besov { s: 1.0, p: 2.0, q: 1.0 }).unwrap();
        let w1 = DyadicPartition::shell_weight(1, 6);
        let w2 = DyadicPartition::shell_weight(2, 6);
        assert!((v - (2.0 * w1 + 4.0 * w2)).abs() < 1e-12);
    }
}
