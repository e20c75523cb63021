//! Products of conormal dyadic blocks on the `2 pi x 2 pi` space-time lattice.
//!
//! A block `Delta^{+-}_{jk}` keeps modes `m` of the given sign with `|m|` in shell `j`
//! and time frequencies `n = theta(m) + s` with `|s|` in conormal shell `k`. Blocks are
//! stored by `(m, s)`, so the product of two blocks lands at
//! `sigma = s1 + s2 + G(m1, m2)`, `G = theta(m1) + theta(m2) - theta(m1 + m2)`.
//! Norms are `l^2` norms of the lattice coefficients (the common `2 pi` factors drop).
//!
//! Data are coherent: Gaussian magnitudes with aligned phases, the configuration in
//! which the counting bounds are attained.

use std::collections::HashMap;

use rand_distr::{Distribution, StandardNormal};

use super::report::EstimateReport;
use crate::ensemble::rng;
use crate::error::{Error, Result};
use crate::littlewood_paley::{shell_weight, DyadicPartition};
use crate::spectral::{theta, Sign};

fn lattice_theta(m: i64) -> i64 {
    theta(m as f64).round() as i64
}

/// Conormal shell weight at integer distance `s`.
fn conormal_weight(k: i32, s: i64) -> f64 {
    shell_weight(k, s.unsigned_abs() as f64)
}

fn conormal_reach(k: i32) -> i64 {
    if k < 0 {
        2
    } else {
        4i64 << k
    }
}

#[derive(Clone, Debug)]
pub struct LatticeBlock {
    pub sign: Sign,
    pub j: i32,
    pub k: i32,
    /// `(m, values over s in [-reach, reach])`.
    rows: Vec<(i64, Vec<f64>)>,
}

impl LatticeBlock {
    /// Coherent random data: `|gaussian| psi_j(|m|) psi_k(|s|)`.
    pub fn random(sign: Sign, j: i32, k: i32, seed: u64) -> Result<Self> {
        if j < 0 {
            return Err(Error::ShellOutOfRange { index: j, min: 0, max: i32::MAX });
        }
        let mut r = rng(seed);
        let (lo, hi) = DyadicPartition::shell_support(j);
        let reach = conormal_reach(k);
        let mut rows = Vec::new();
        for a in lo..=hi {
            let wj = DyadicPartition::shell_weight(j, a);
            if wj == 0.0 {
                continue;
            }
            let m = sign.value() as i64 * a as i64;
            let vals = (-reach..=reach)
                .map(|s| {
                    let g: f64 = StandardNormal.sample(&mut r);
                    g.abs() * wj * conormal_weight(k, s)
                })
                .collect();
            rows.push((m, vals));
        }
        Ok(Self { sign, j, k, rows })
    }

    fn reach(&self) -> i64 {
        conormal_reach(self.k)
    }

    pub fn norm(&self) -> f64 {
        self.rows.iter().flat_map(|(_, v)| v.iter()).map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Number of lattice points carrying data.
    pub fn support_size(&self) -> usize {
        self.rows.iter().flat_map(|(_, v)| v.iter()).filter(|x| **x != 0.0).count()
    }
}

/// Output localization `Delta^+_{j'' k''}`; `k'' = None` keeps every time frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutputBlock {
    pub j: i32,
    pub k: Option<i32>,
}

/// `||Delta^+_{j''k''}(v u)||` for two lattice blocks.
pub fn block_product_norm(v: &LatticeBlock, u: &LatticeBlock, out: OutputBlock) -> f64 {
    let (ru, rv) = (u.reach(), v.reach());
    let window = match out.k {
        Some(k) => conormal_reach(k),
        None => i64::MAX / 4,
    };
    let dense = out.k.is_some();
    let width = if dense { (2 * window + 1) as usize } else { 0 };
    let mut sparse: HashMap<(i64, i64), f64> = HashMap::new();
    let u_index: HashMap<i64, usize> = u.rows.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();
    let mut targets: Vec<i64> = v.rows.iter().flat_map(|(m1, _)| u.rows.iter().map(move |(m2, _)| m1 + m2)).collect();
    targets.sort_unstable();
    targets.dedup();
    targets.retain(|&m| m > 0 && DyadicPartition::shell_weight(out.j, m as u64) != 0.0);
    let mut dense_sum = 0.0;
    let mut row = vec![0.0; width];
    for &m in &targets {
        row.iter_mut().for_each(|r| *r = 0.0);
        for (m1, a1) in &v.rows {
            let Some(&i_u) = u_index.get(&(m - m1)) else { continue };
            let (m2, a2) = (&u.rows[i_u].0, &u.rows[i_u].1);
            let g = lattice_theta(*m1) + lattice_theta(*m2) - lattice_theta(m);
            if g - rv - ru > window || g + rv + ru < -window {
                continue;
            }
            if !dense {
                for (i1, x1) in a1.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                    let base = i1 as i64 - rv - ru + g;
                    for (i2, x2) in a2.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                        *sparse.entry((m, base + i2 as i64)).or_insert(0.0) += x1 * x2;
                    }
                }
                continue;
            }
            let len2 = a2.len() as i64;
            for (i1, x1) in a1.iter().enumerate() {
                if *x1 == 0.0 {
                    continue;
                }
                // sigma = base + i2 must satisfy |sigma| <= window
                let base = i1 as i64 - rv - ru + g;
                let lo = (-window - base).max(0);
                let hi = (window - base).min(len2 - 1);
                if lo > hi {
                    continue;
                }
                let off = (base + window + lo) as usize;
                let src = &a2[lo as usize..=hi as usize];
                for (r, x2) in row[off..off + src.len()].iter_mut().zip(src) {
                    *r += x1 * x2;
                }
            }
        }
        if dense {
            let wj = DyadicPartition::shell_weight(out.j, m as u64);
            let k = out.k.expect("dense output has a conormal shell");
            dense_sum += row
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(|(i, c)| (wj * conormal_weight(k, i as i64 - window) * c).powi(2))
                .sum::<f64>();
        }
    }
    let weight = |m: i64, sigma: i64| {
        let wk = out.k.map_or(1.0, |k| conormal_weight(k, sigma));
        DyadicPartition::shell_weight(out.j, m as u64) * wk
    };
    let sparse_sum: f64 = sparse.iter().map(|((m, sigma), c)| (weight(*m, *sigma) * c).powi(2)).sum();
    (dense_sum + sparse_sum).sqrt()
}

/// Whether `Delta^+_{j''}(Delta^{sv}_{j'} v . Delta^+_j u)` vanishes because the spatial
/// supports cannot meet (open shell supports `(2^j, 2^{j+2})`).
pub fn support_vanishes(v_sign: Sign, j_v: i32, j_u: i32, j_out: i32) -> bool {
    let open = |j: i32| (1i64 << j, 4i64 << j);
    let (vl, vh) = open(j_v);
    let (ul, uh) = open(j_u);
    let (ol, oh) = open(j_out);
    // open range of m = m_v + m_u, intersected with m > 0
    let (lo, hi) = match v_sign {
        Sign::Plus => (ul + vl, uh + vh),
        Sign::Minus => (ul - vh, uh - vl),
    };
    let lo = lo.max(0);
    !(lo < oh && ol < hi)
}

/// The dyadic scale attached to one appendix case, as a function of the block indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockScale {
    /// `2^{j_flat/2 + k_flat/2}`.
    Sobolev,
    /// `2^{k_flat/2 + (k_mid - j_mid)/2}`.
    ConormalMiddle,
    /// `2^{k_flat/2 + (k_mid - j_flat)/2}`.
    ConormalFlat,
    /// `2^{k_flat/2 + k_mid/4}`.
    ConormalQuarter,
}

fn sorted3(a: i32, b: i32, c: i32) -> [i32; 3] {
    let mut v = [a, b, c];
    v.sort();
    v
}

impl BlockScale {
    pub fn value(self, js: [i32; 3], ks: [i32; 3]) -> f64 {
        let j = sorted3(js[0].max(0), js[1].max(0), js[2].max(0));
        let k = sorted3(ks[0].max(0), ks[1].max(0), ks[2].max(0));
        let e = match self {
            BlockScale::Sobolev => 0.5 * (j[0] + k[0]) as f64,
            BlockScale::ConormalMiddle => 0.5 * k[0] as f64 + 0.5 * (k[1] - j[1]) as f64,
            BlockScale::ConormalFlat => 0.5 * k[0] as f64 + 0.5 * (k[1] - j[0]) as f64,
            BlockScale::ConormalQuarter => 0.5 * k[0] as f64 + 0.25 * k[1] as f64,
        };
        f64::powf(2.0, e)
    }
}

/// One row of the case table: fixed indices, the swept one, and the scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCase {
    pub id: &'static str,
    pub v_sign: Sign,
    /// `(j', k')` of `v`, `(j, k)` of `u`, `(j'', k'')` of the output, before the sweep.
    pub v: (i32, i32),
    pub u: (i32, i32),
    pub out: (i32, i32),
    /// Which slot is swept: 0..6 in the order `j, k, j', k', j'', k''`.
    pub swept: usize,
    pub sweep: (i32, i32),
    pub scale: BlockScale,
}

impl BlockCase {
    fn indices(&self, p: i32) -> [i32; 6] {
        let mut idx = [self.u.0, self.u.1, self.v.0, self.v.1, self.out.0, self.out.1];
        idx[self.swept] = p;
        idx
    }

    pub fn signs(&self) -> String {
        format!("+{}+", if self.v_sign == Sign::Plus { '+' } else { '-' })
    }
}

/// Table of the appendix cases realised with sharp coherent configurations.
pub fn block_cases() -> Vec<BlockCase> {
    vec![
        // low-frequency factor with a small conormal box inside a wide one
        BlockCase {
            id: "sobolev",
            v_sign: Sign::Plus,
            v: (1, 0),
            u: (3, 9),
            out: (3, 9),
            swept: 3,
            sweep: (0, 4),
            scale: BlockScale::Sobolev,
        },
        // paraproduct j' << j ~ j'', resonance spread by 2 m_v m_u
        BlockCase {
            id: "conormal-paraproduct",
            v_sign: Sign::Plus,
            v: (4, -1),
            u: (6, 6),
            out: (6, 12),
            swept: 1,
            sweep: (5, 9),
            scale: BlockScale::ConormalMiddle,
        },
        // high-high to low with opposite signs
        BlockCase {
            id: "conormal-high-high",
            v_sign: Sign::Minus,
            v: (6, 0),
            u: (6, 2),
            out: (1, 9),
            swept: 1,
            sweep: (2, 6),
            scale: BlockScale::ConormalFlat,
        },
        // comparable frequencies, stationary resonance at m_u = m_v
        BlockCase {
            id: "conormal-diagonal",
            v_sign: Sign::Plus,
            v: (5, 0),
            u: (5, 1),
            out: (6, 12),
            swept: 1,
            sweep: (1, 5),
            scale: BlockScale::ConormalQuarter,
        },
    ]
}

/// Sweeps one case over its free index for every seed.
pub fn block_product_ratio(case: &BlockCase, seeds: &[u64]) -> Result<Vec<EstimateReport>> {
    let mut out = Vec::new();
    for p in case.sweep.0..=case.sweep.1 {
        let idx = case.indices(p);
        for &seed in seeds {
            let u = LatticeBlock::random(Sign::Plus, idx[0], idx[1], seed.wrapping_mul(2).wrapping_add(1))?;
            let v = LatticeBlock::random(case.v_sign, idx[2], idx[3], seed.wrapping_mul(2))?;
            let lhs = block_product_norm(&v, &u, OutputBlock { j: idx[4], k: Some(idx[5]) });
            let scale = case.scale.value([idx[0], idx[2], idx[4]], [idx[1], idx[3], idx[5]]);
            let indices = [Some(idx[0]), Some(idx[1]), Some(idx[2]), Some(idx[3]), Some(idx[4]), Some(idx[5])];
            out.push(EstimateReport::new(case.id, indices, &case.signs(), seed, lhs, scale * u.norm() * v.norm()));
        }
    }
    Ok(out)
}

/// Exhaustive support-vanishing check over `0 <= j, j', j'' <= j_top` and both signs of
/// `v`: returns `(v_sign, j, j', j'', relative output)` for every predicted-vanishing
/// triple.
pub fn vanishing_cases(j_top: i32, seed: u64) -> Result<Vec<(Sign, i32, i32, i32, f64)>> {
    let mut out = Vec::new();
    for v_sign in [Sign::Plus, Sign::Minus] {
        for j in 0..=j_top {
            let u = LatticeBlock::random(Sign::Plus, j, 0, seed)?;
            for jp in 0..=j_top {
                let v = LatticeBlock::random(v_sign, jp, 0, seed + 1)?;
                for jo in 0..=j_top {
                    if support_vanishes(v_sign, jp, j, jo) {
                        let r = block_product_norm(&v, &u, OutputBlock { j: jo, k: None }) / (u.norm() * v.norm());
                        out.push((v_sign, j, jp, jo, r));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_vanishing_by_hand() {
        // m_v in (1, 4), m_u in (1, 4): sum in (2, 8)
        assert!(support_vanishes(Sign::Plus, 0, 0, 3));
        assert!(!support_vanishes(Sign::Plus, 0, 0, 1));
        // opposite signs: difference in (-3, 3), positive part (0, 3)
        assert!(!support_vanishes(Sign::Minus, 0, 0, 0));
        assert!(!support_vanishes(Sign::Minus, 0, 0, 1));
        assert!(support_vanishes(Sign::Minus, 0, 0, 2));
    }

    #[test]
    fn predicted_vanishing_products_are_zero() {
        let cases = vanishing_cases(3, 9).unwrap();
        assert!(!cases.is_empty());
        assert!(cases.iter().all(|c| c.4 == 0.0));
    }

    #[test]
    fn product_norm_is_bilinear() {
        let u = LatticeBlock::random(Sign::Plus, 3, 1, 1).unwrap();
        let v = LatticeBlock::random(Sign::Minus, 2, 0, 2).unwrap();
        let mut v3 = v.clone();
        v3.rows.iter_mut().for_each(|(_, row)| row.iter_mut().for_each(|c| *c *= -3.0));
        let out = OutputBlock { j: 1, k: Some(4) };
        let a = block_product_norm(&v, &u, out);
        assert!(a > 0.0);
        assert!((block_product_norm(&v3, &u, out) - 3.0 * a).abs() < 1e-12 * a);
        assert!((v3.norm() - 3.0 * v.norm()).abs() < 1e-12 * v.norm());
    }

    #[test]
    fn scales_by_hand() {
        assert_eq!(BlockScale::Sobolev.value([3, 1, 3], [9, 2, 9]), f64::powf(2.0, 1.5));
        assert_eq!(BlockScale::ConormalQuarter.value([5, 5, 6], [1, 0, 12]), f64::powf(2.0, 0.25));
    }
}
