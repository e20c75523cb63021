//! Mixed Lebesgue norms of dyadic blocks, evaluated in one streaming pass over frames.

use num_complex::Complex64;

use super::source::SpaceTime;
use super::spec::{dyadic_weight, lq, NormSpec};
use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::fft_inverse;

/// Order of integration: time outside (`L^rho_t L^p_x`) or space outside (`L^p_x L^rho_t`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    TimeOuter,
    SpaceOuter,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedRequest {
    pub order: Order,
    pub p: f64,
    pub rho: f64,
}

/// Trapezoid weights on arbitrary sample times (a single sample gets weight 1).
pub fn trapezoid_weights(times: &[f64]) -> Vec<f64> {
    let m = times.len();
    if m == 1 {
        return vec![1.0];
    }
    (0..m)
        .map(|n| {
            let left = if n > 0 { times[n] - times[n - 1] } else { 0.0 };
            let right = if n + 1 < m { times[n + 1] - times[n] } else { 0.0 };
            0.5 * (left.abs() + right.abs())
        })
        .collect()
}

fn pow_small(v: f64, e: f64) -> f64 {
    if e == 1.0 {
        v
    } else if e == 2.0 {
        v * v
    } else if e == 4.0 {
        (v * v) * (v * v)
    } else {
        v.powf(e)
    }
}

fn power_acc(acc: &mut f64, v: f64, w: f64, e: f64) {
    if e.is_infinite() {
        *acc = acc.max(v);
    } else {
        *acc += w * pow_small(v, e);
    }
}

fn finish(acc: f64, e: f64) -> f64 {
    if e.is_infinite() {
        acc
    } else {
        acc.powf(1.0 / e)
    }
}

/// `||Delta_j u||` in each requested mixed norm; result `[request][j + 1]`.
pub fn shell_mixed_norms<S: SpaceTime + ?Sized>(src: &S, requests: &[MixedRequest]) -> Result<Vec<Vec<f64>>> {
    for r in requests {
        if !(r.p >= 1.0 && r.rho >= 1.0) {
            return Err(Error::param("exponent", "mixed-norm exponents must lie in [1, inf]"));
        }
    }
    let grid = src.grid();
    let n = grid.n_points();
    let dx = grid.dx();
    let part = DyadicPartition::new(grid);
    let n_shells = (part.j_max() + 2) as usize;
    let times = src.times();
    let wt = trapezoid_weights(times);

    let mut time_acc = vec![vec![0.0; n_shells]; requests.len()];
    let mut space_acc: Vec<Vec<Vec<f64>>> =
        requests.iter().map(|r| if r.order == Order::SpaceOuter { vec![vec![0.0; n]; n_shells] } else { Vec::new() }).collect();
    // shell supports and weights over signed modes
    let shell_modes: Vec<Vec<(usize, f64)>> = (-1..=part.j_max())
        .map(|j| {
            (0..n)
                .filter_map(|k| {
                    let w = DyadicPartition::shell_weight(j, grid.mode(k).unsigned_abs());
                    (w != 0.0).then_some((k, w))
                })
                .collect()
        })
        .collect();

    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (t_idx, &w) in wt.iter().enumerate() {
        let spec = src.frame_spectrum(t_idx);
        for (ji, modes) in shell_modes.iter().enumerate() {
            if modes.iter().all(|&(k, _)| spec[k].norm_sqr() == 0.0) {
                continue;
            }
            buf.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
            for &(k, wk) in modes {
                buf[k] = spec[k] * wk;
            }
            fft_inverse(&mut buf);
            for (ri, r) in requests.iter().enumerate() {
                match r.order {
                    Order::TimeOuter => {
                        let space = if r.p.is_infinite() {
                            buf.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max).sqrt()
                        } else {
                            (buf.iter().map(|v| pow_small(v.norm_sqr().sqrt(), r.p)).sum::<f64>() * dx).powf(1.0 / r.p)
                        };
                        power_acc(&mut time_acc[ri][ji], space, w, r.rho);
                    }
                    Order::SpaceOuter => {
                        let acc = &mut space_acc[ri][ji];
                        for (a, v) in acc.iter_mut().zip(&buf) {
                            power_acc(a, v.norm_sqr().sqrt(), w, r.rho);
                        }
                    }
                }
            }
        }
    }

    Ok(requests
        .iter()
        .enumerate()
        .map(|(ri, r)| match r.order {
            Order::TimeOuter => time_acc[ri].iter().map(|&a| finish(a, r.rho)).collect(),
            Order::SpaceOuter => space_acc[ri]
                .iter()
                .map(|acc| {
                    let pointwise = acc.iter().map(|&a| finish(a, r.rho));
                    if r.p.is_infinite() {
                        pointwise.fold(0.0, f64::max)
                    } else {
                        (pointwise.map(|v| pow_small(v, r.p)).sum::<f64>() * dx).powf(1.0 / r.p)
                    }
                })
                .collect(),
        })
        .collect())
}

fn request_of(spec: &NormSpec) -> Result<(MixedRequest, f64, f64)> {
    match *spec {
        NormSpec::Lb { rho, s, p, q } => Ok((MixedRequest { order: Order::TimeOuter, p, rho }, s, q)),
        NormSpec::Bl { s, p, q, rho } => Ok((MixedRequest { order: Order::SpaceOuter, p, rho }, s, q)),
        _ => Err(Error::param("spec", "mixed norms take the lb or bl family")),
    }
}

fn weighted(shells: &[f64], s: f64, q: f64) -> f64 {
    lq(shells.iter().enumerate().map(|(i, v)| dyadic_weight(i as i32 - 1, s) * v), q)
}

/// Several `lb` / `bl` norms sharing one pass over the frames.
pub fn mixed_norms<S: SpaceTime + ?Sized>(src: &S, specs: &[NormSpec]) -> Result<Vec<f64>> {
    let mut reqs = Vec::new();
    let mut weights = Vec::new();
    for spec in specs {
        spec.validate()?;
        let (r, s, q) = request_of(spec)?;
        reqs.push(r);
        weights.push((s, q));
    }
    let shells = shell_mixed_norms(src, &reqs)?;
    Ok(shells.iter().zip(&weights).map(|(sh, &(s, q))| weighted(sh, s, q)).collect())
}

pub fn mixed_norm<S: SpaceTime + ?Sized>(src: &S, spec: &NormSpec) -> Result<f64> {
    Ok(mixed_norms(src, std::slice::from_ref(spec))?[0])
}

/// The four constituents of `Y^s` in the order of [`NormSpec::y_constituents`].
pub fn y_constituents<S: SpaceTime + ?Sized>(src: &S, s: f64) -> Result<[f64; 4]> {
    let v = mixed_norms(src, &NormSpec::y_constituents(s))?;
    Ok([v[0], v[1], v[2], v[3]])
}

pub fn y_norm<S: SpaceTime + ?Sized>(src: &S, s: f64) -> Result<f64> {
    Ok(y_constituents(src, s)?.into_iter().fold(0.0, f64::max))
}

/// Mixed norm of the field itself, without dyadic decomposition.
pub fn plain_mixed_norm<S: SpaceTime + ?Sized>(src: &S, req: MixedRequest) -> f64 {
    let grid = src.grid();
    let dx = grid.dx();
    let wt = trapezoid_weights(src.times());
    let mut time_acc = 0.0;
    let mut space_acc = vec![0.0; grid.n_points()];
    for (n, &w) in wt.iter().enumerate() {
        let f = src.frame(n);
        match req.order {
            Order::TimeOuter => power_acc(&mut time_acc, f.norm_lp(req.p), w, req.rho),
            Order::SpaceOuter => {
                for (a, v) in space_acc.iter_mut().zip(f.values()) {
                    power_acc(a, v.norm(), w, req.rho);
                }
            }
        }
    }
    match req.order {
        Order::TimeOuter => finish(time_acc, req.rho),
        Order::SpaceOuter => {
            let pointwise = space_acc.iter().map(|&a| finish(a, req.rho));
            if req.p.is_infinite() {
                pointwise.fold(0.0, f64::max)
            } else {
                (pointwise.map(|v| v.powf(req.p)).sum::<f64>() * dx).powf(1.0 / req.p)
            }
        }
    }
}

/// The four `Y^s` exponent pairs as plain requests (weights dropped).
pub fn y_requests() -> [MixedRequest; 4] {
    let inf = f64::INFINITY;
    [
        MixedRequest { order: Order::TimeOuter, p: 2.0, rho: inf },
        MixedRequest { order: Order::TimeOuter, p: inf, rho: 4.0 },
        MixedRequest { order: Order::SpaceOuter, p: inf, rho: 2.0 },
        MixedRequest { order: Order::SpaceOuter, p: 4.0, rho: inf },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let t: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let w = trapezoid_weights(&t);
        let integral: f64 = w.iter().zip(&t).map(|(w, t)| w * t).sum();
        assert!((integral - 0.5).abs() < 1e-14);
    }
}
