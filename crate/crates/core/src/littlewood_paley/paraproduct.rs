//! Bony decomposition `g f = T_g f + T_f g + R(g, f)`.

use super::partition::DyadicPartition;
use crate::error::Result;
use crate::spectral::Field;

/// Low-pass pieces `S_{k-1} g` for `k = 1..=j_max`, built by summing shells.
fn low_parts(shells: &[Field]) -> Result<Vec<Field>> {
    // shells[0] is Delta_{-1}; S_{k-1} = sum_{i=-1}^{k-2} Delta_i
    let mut out = Vec::with_capacity(shells.len());
    let mut acc = shells[0].clone();
    out.push(acc.clone()); // S_0, used by k = 1
    for s in &shells[1..shells.len().saturating_sub(1)] {
        acc = acc.add(s)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// `T_g f = sum_{k=1}^{j_max} S_{k-1} g . Delta_k f`, every product dealiased.
///
/// `S_{-1}` is taken as zero, so the `k <= 0` interactions live in the remainder.
pub fn paraproduct(p: &DyadicPartition, g: &Field, f: &Field, dealias: f64) -> Result<Field> {
    let gs = p.shells(g)?;
    let fs = p.shells(f)?;
    paraproduct_from_shells(&gs, &fs, dealias)
}

fn paraproduct_from_shells(gs: &[Field], fs: &[Field], dealias: f64) -> Result<Field> {
    let lows = low_parts(gs)?;
    let mut acc = Field::zeros(fs[0].grid());
    for (k_idx, f_k) in fs.iter().enumerate().skip(2) {
        // fs index k_idx holds Delta_{k_idx - 1}; its partner is S_{k_idx - 2}
        let low = &lows[k_idx - 2];
        acc = acc.add(&low.mul_dealiased(f_k, dealias)?)?;
    }
    Ok(acc)
}

/// `R(g, f) = sum_{|j-k| <= 1} Delta_j g . Delta_k f`.
pub fn remainder(p: &DyadicPartition, g: &Field, f: &Field, dealias: f64) -> Result<Field> {
    let gs = p.shells(g)?;
    let fs = p.shells(f)?;
    remainder_from_shells(&gs, &fs, dealias)
}

fn remainder_from_shells(gs: &[Field], fs: &[Field], dealias: f64) -> Result<Field> {
    let n = gs.len();
    let mut acc = Field::zeros(gs[0].grid());
    for j in 0..n {
        for k in j.saturating_sub(1)..(j + 2).min(n) {
            acc = acc.add(&gs[j].mul_dealiased(&fs[k], dealias)?)?;
        }
    }
    Ok(acc)
}

/// All three Bony pieces `(T_g f, T_f g, R(g, f))` from one set of shells.
pub fn bony_decomposition(p: &DyadicPartition, g: &Field, f: &Field, dealias: f64) -> Result<(Field, Field, Field)> {
    let gs = p.shells(g)?;
    let fs = p.shells(f)?;
    Ok((
        paraproduct_from_shells(&gs, &fs, dealias)?,
        paraproduct_from_shells(&fs, &gs, dealias)?,
        remainder_from_shells(&gs, &fs, dealias)?,
    ))
}

/// `[Delta_j, a] b = Delta_j(a b) - a Delta_j b`, products dealiased.
pub fn shell_commutator(p: &DyadicPartition, j: i32, a: &Field, b: &Field, dealias: f64) -> Result<Field> {
    let ab = a.mul_dealiased(b, dealias)?;
    p.shell(&ab, j)?.sub(&a.mul_dealiased(&p.shell(b, j)?, dealias)?)
}

/// `[S_j, a] b = S_j(a b) - a S_j b`, products dealiased.
pub fn low_pass_commutator(p: &DyadicPartition, j: i32, a: &Field, b: &Field, dealias: f64) -> Result<Field> {
    let ab = a.mul_dealiased(b, dealias)?;
    p.low_pass(&ab, j)?.sub(&a.mul_dealiased(&p.low_pass(b, j)?, dealias)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid1D;

    #[test]
    fn bony_split_of_trig_polynomials() {
        let g = Grid1D::new(256, 2.0 * std::f64::consts::PI).unwrap();
        let p = DyadicPartition::new(g);
        let a = Field::from_fn(g, |x| (3.0 * x).cos() + 0.2 * (40.0 * x).sin());
        let b = Field::from_fn(g, |x| (17.0 * x).sin() - 0.5 * (2.0 * x).cos());
        let (tab, tba, r) = bony_decomposition(&p, &a, &b, 2.0 / 3.0).unwrap();
        let sum = tab.add(&tba).unwrap().add(&r).unwrap();
        let prod = a.mul_dealiased(&b, 2.0 / 3.0).unwrap();
        assert!(sum.distance(&prod).unwrap() < 1e-12 * prod.norm_l2());
    }

    #[test]
    fn paraproduct_terms_fill_a_ball_not_an_annulus() {
        let g = Grid1D::new(512, 2.0 * std::f64::consts::PI).unwrap();
        let p = DyadicPartition::new(g);
        let mut r = crate::ensemble::rng(0);
        let a = crate::ensemble::random_real_field(g, 1, 120, Some(1.0), &mut r);
        let b = crate::ensemble::random_real_field(g, 1, 120, Some(1.0), &mut r);
        for k in 1..=p.j_max() {
            let term = p.low_pass(&a, k - 1).unwrap().mul_dealiased(&p.shell(&b, k).unwrap(), 1.0).unwrap();
            let spec = term.spectrum();
            let top = spec.iter().enumerate().filter(|(m, c)| c.norm() > 1e-13 && g.mode(*m).unsigned_abs() > 5 << k).count();
            assert_eq!(top, 0, "k = {k}");
            // the low edge is not preserved: content reaches below 2^k
            let low: f64 = spec.iter().enumerate().filter(|(m, _)| g.mode(*m).unsigned_abs() < 1 << k).map(|(_, c)| c.norm_sqr()).sum();
            assert!(low > 0.0, "k = {k}");
        }
    }
}
