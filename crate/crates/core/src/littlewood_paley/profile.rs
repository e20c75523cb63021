//! Smooth cutoff built from the `exp(-1/x)` glue.

fn glue(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth step: 0 for `x <= 0`, 1 for `x >= 1`.
pub fn smooth_step(x: f64) -> f64 {
    let a = glue(x);
    let b = glue(1.0 - x);
    a / (a + b)
}

/// Radial low-pass profile: 1 on `[0, 1]`, 0 on `[2, inf)`, smooth and non-increasing.
pub fn phi_hat(r: f64) -> f64 {
    let r = r.abs();
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        1.0 - smooth_step(r - 1.0)
    }
}

/// Shell profile `phi_hat(r/2) - phi_hat(r)`, supported on `[1, 4]`.
pub fn psi_hat(r: f64) -> f64 {
    phi_hat(r / 2.0) - phi_hat(r)
}

/// Shell `k >= -1` of a dyadic partition of the half-line in physical units:
/// `phi_hat(r)` for `k = -1`, `psi_hat(r / 2^k)` otherwise.
pub fn shell_weight(k: i32, r: f64) -> f64 {
    if k < 0 {
        phi_hat(r)
    } else {
        psi_hat(r / f64::powi(2.0, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape() {
        assert_eq!(phi_hat(0.5), 1.0);
        assert_eq!(phi_hat(1.0), 1.0);
        assert_eq!(phi_hat(2.0), 0.0);
        assert!((phi_hat(1.5) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=400 {
            let v = phi_hat(1.0 + i as f64 / 400.0);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn shells_sum_to_one() {
        for i in 0..2000 {
            let r = i as f64 * 0.037;
            let s: f64 = (-1..12).map(|k| shell_weight(k, r)).sum();
            assert!((s - 1.0).abs() < 1e-14, "r={r} s={s}");
        }
    }
}
