use crate::error::{Error, Result};

/// Which norm to evaluate and with which indices. Exponents may be `f64::INFINITY`.
///
/// Spatial shells are counted in mode units (`|m| ~ 2^j`), conormal shells in the
/// physical units of `sigma = tau + theta(xi)`. The lowest block of either ladder
/// (index `-1`) carries weight 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormSpec {
    /// `l^q_j (2^{js} ||Delta_j f||_{L^p})`.
    Besov { s: f64, p: f64, q: f64 },
    /// `(sum (1 + xi^2)^s |c|^2 L)^{1/2}` in physical units.
    Sobolev { s: f64 },
    /// Time outside: `l^q_j (2^{js} ||Delta_j u||_{L^rho_t L^p_x})`.
    Lb { rho: f64, s: f64, p: f64, q: f64 },
    /// Space outside: `l^q_j (2^{js} ||Delta_j u||_{L^p_x L^rho_t})`.
    Bl { s: f64, p: f64, q: f64, rho: f64 },
    /// `l^q_{jk} (2^{js + kb} ||Delta_{jk} u||_{L^2_{t,x}})`.
    Xsbq { s: f64, b: f64, q: f64 },
    /// Maximum of the four mixed norms making up `Y^s`.
    Y { s: f64 },
}

fn exponent(name: &'static str, v: f64) -> Result<()> {
    if v >= 1.0 && !v.is_nan() {
        Ok(())
    } else {
        Err(Error::param(name, format!("exponent {v} outside [1, inf]")))
    }
}

fn regularity(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, "must be finite"))
    }
}

impl NormSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::Besov { s, p, q } => {
                regularity("s", s)?;
                exponent("p", p)?;
                exponent("q", q)
            }
            NormSpec::Sobolev { s } | NormSpec::Y { s } => regularity("s", s),
            NormSpec::Lb { rho, s, p, q } | NormSpec::Bl { s, p, q, rho } => {
                regularity("s", s)?;
                exponent("p", p)?;
                exponent("q", q)?;
                exponent("rho", rho)
            }
            NormSpec::Xsbq { s, b, q } => {
                regularity("s", s)?;
                regularity("b", b)?;
                exponent("q", q)
            }
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            NormSpec::Besov { .. } => "besov",
            NormSpec::Sobolev { .. } => "sobolev",
            NormSpec::Lb { .. } => "lb",
            NormSpec::Bl { .. } => "bl",
            NormSpec::Xsbq { .. } => "xsbq",
            NormSpec::Y { .. } => "y",
        }
    }

    /// `(s, b, p, rho, q)` with NaN for indices the family does not use.
    pub fn indices(&self) -> (f64, f64, f64, f64, f64) {
        let nan = f64::NAN;
        match *self {
            NormSpec::Besov { s, p, q } => (s, nan, p, nan, q),
            NormSpec::Sobolev { s } | NormSpec::Y { s } => (s, nan, nan, nan, nan),
            NormSpec::Lb { rho, s, p, q } | NormSpec::Bl { s, p, q, rho } => (s, nan, p, rho, q),
            NormSpec::Xsbq { s, b, q } => (s, b, nan, nan, q),
        }
    }

    /// The four constituents of `Y^s`.
    pub fn y_constituents(s: f64) -> [NormSpec; 4] {
        let inf = f64::INFINITY;
        [
            NormSpec::Lb { rho: inf, s, p: 2.0, q: 1.0 },
            NormSpec::Lb { rho: 4.0, s, p: inf, q: 1.0 },
            NormSpec::Bl { s: s + 0.5, p: inf, q: 1.0, rho: 2.0 },
            NormSpec::Bl { s: s - 0.25, p: 4.0, q: 1.0, rho: inf },
        ]
    }
}

/// `l^q` norm of a nonnegative sequence; empty sequences give 0.
pub fn lq(seq: impl IntoIterator<Item = f64>, q: f64) -> f64 {
    if q.is_infinite() {
        seq.into_iter().fold(0.0, f64::max)
    } else {
        seq.into_iter().map(|v| v.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// Dyadic weight `2^{j s}` with the index `-1` block weighted 1.
pub fn dyadic_weight(j: i32, s: f64) -> f64 {
    f64::powf(2.0, j.max(0) as f64 * s)
}

/// Formats a float with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// One CSV row of a norm report.
#[derive(Clone, Debug, PartialEq)]
pub struct NormRecord {
    pub spec: NormSpec,
    pub value: f64,
    pub taper_id: String,
    pub grid_id: String,
}

impl NormRecord {
    pub const CSV_HEADER: &'static str = "family,s,b,p,rho,q,value,taper_id,grid_id";

    pub fn csv_row(&self) -> String {
        let (s, b, p, rho, q) = self.spec.indices();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.spec.family(),
            fmt17(s),
            fmt17(b),
            fmt17(p),
            fmt17(rho),
            fmt17(q),
            fmt17(self.value),
            self.taper_id,
            self.grid_id
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(NormSpec::Besov { s: 0.0, p: 0.5, q: 1.0 }.validate().is_err());
        assert!(NormSpec::Lb { rho: f64::INFINITY, s: 0.0, p: 2.0, q: 1.0 }.validate().is_ok());
        assert!(NormSpec::Xsbq { s: 0.0, b: f64::NAN, q: 1.0 }.validate().is_err());
    }

    #[test]
    fn lq_basics() {
        assert_eq!(lq(vec![3.0, 4.0], 2.0), 5.0);
        assert_eq!(lq(vec![3.0, 4.0], f64::INFINITY), 4.0);
        assert_eq!(lq(Vec::<f64>::new(), f64::INFINITY), 0.0);
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
    }
}
