//! Trading an `l^inf` bound at two regularities for `l^1` summability in between.

/// `(sum_n (2^{s n} |a_n|)^q)^{1/q}` for a sequence starting at index `n0`.
pub fn weighted_sequence_norm(a: &[f64], n0: i32, s: f64, q: f64) -> f64 {
    super::spec::lq(a.iter().enumerate().map(|(i, v)| f64::powf(2.0, s * (n0 + i as i32) as f64) * v.abs()), q)
}

/// Constant `1/(1 - 2^{-alpha}) + 1/(1 - 2^{-beta})` from splitting the sum at the
/// crossover index, with `theta = (s1 - s)/(s1 - s0)`, `alpha = (1-theta)(s1-s0)`,
/// `beta = theta (s1 - s0)`.
pub fn interpolation_constant(s0: f64, s: f64, s1: f64) -> f64 {
    let theta = (s1 - s) / (s1 - s0);
    let alpha = (1.0 - theta) * (s1 - s0);
    let beta = theta * (s1 - s0);
    1.0 / (1.0 - f64::powf(2.0, -alpha)) + 1.0 / (1.0 - f64::powf(2.0, -beta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpolationCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub theta: f64,
}

impl InterpolationCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-12)
    }
}

/// `||a||_{l^s_1}` against `C ||a||^theta_{l^{s0}_inf} ||a||^{1-theta}_{l^{s1}_inf}`.
pub fn interpolation_check(a: &[f64], n0: i32, s0: f64, s: f64, s1: f64) -> InterpolationCheck {
    assert!(s0 < s && s < s1, "need s0 < s < s1");
    let theta = (s1 - s) / (s1 - s0);
    let constant = interpolation_constant(s0, s, s1);
    let lhs = weighted_sequence_norm(a, n0, s, 1.0);
    let a0 = weighted_sequence_norm(a, n0, s0, f64::INFINITY);
    let a1 = weighted_sequence_norm(a, n0, s1, f64::INFINITY);
    let rhs = constant * a0.powf(theta) * a1.powf(1.0 - theta);
    InterpolationCheck { lhs, rhs, constant, theta }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_sequence_is_close_to_sharp() {
        // a_n = 2^{-s n} makes the l^1 sum grow with length while both sup norms stay finite
        let s0 = 0.0;
        let s1 = 1.0;
        let s = 0.5;
        let a: Vec<f64> = (0..40).map(|n| f64::powf(2.0, -0.5 * n as f64)).collect();
        let c = interpolation_check(&a, 0, s0, s, s1);
        assert!(c.holds());
        assert!((c.constant - 2.0 / (1.0 - f64::powf(2.0, -0.5))).abs() < 1e-12);
    }
}
