//! Cached complex FFT plans with the normalization used throughout the crate:
//! `c_m = (1/n) sum_j u_j exp(-2πi jm/n)` and `u_j = sum_m c_m exp(2πi jm/n)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type Plans = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<usize, Plans>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
    static SCRATCH: RefCell<Vec<Complex64>> = const { RefCell::new(Vec::new()) };
}

fn run(plan: &dyn Fft<f64>, buf: &mut [Complex64]) {
    SCRATCH.with(|cell| {
        let mut scratch = cell.borrow_mut();
        let need = plan.get_inplace_scratch_len();
        if scratch.len() < need {
            scratch.resize(need, Complex64::new(0.0, 0.0));
        }
        plan.process_with_scratch(buf, &mut scratch[..need]);
    })
}

fn plans(n: usize) -> Plans {
    PLANS.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        cache.entry(n).or_insert_with(|| (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))).clone()
    })
}

/// In-place forward transform, scaled by 1/n.
pub fn forward(buf: &mut [Complex64]) {
    let n = buf.len();
    run(&*plans(n).0, buf);
    let s = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= s;
    }
}

/// In-place unscaled inverse transform.
pub fn inverse(buf: &mut [Complex64]) {
    run(&*plans(buf.len()).1, buf);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_single_mode() {
        let n = 16;
        let mut buf: Vec<Complex64> =
            (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 3.0 * j as f64 / n as f64)).collect();
        let orig = buf.clone();
        forward(&mut buf);
        for (k, c) in buf.iter().enumerate() {
            let expect = if k == 3 { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expect, 0.0)).norm() < 1e-14);
        }
        inverse(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
