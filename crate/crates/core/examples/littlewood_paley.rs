//! Dyadic shells and the Bony decomposition of a product.

use bo_lab::ensemble::{random_real_field, rng};
use bo_lab::littlewood_paley::{bony_decomposition, DyadicPartition};
use bo_lab::spectral::{Field, Grid1D};

fn main() -> bo_lab::Result<()> {
    let grid = Grid1D::new(512, 2.0 * std::f64::consts::PI)?;
    let part = DyadicPartition::new(grid);
    println!("{}", part.id());

    let mut r = rng(7);
    let f = random_real_field(grid, 1, part.resolved_band(), Some(1.0), &mut r);
    let g = random_real_field(grid, 1, 8, Some(1.0), &mut r);

    let mut sum = Field::zeros(grid);
    for (j, s) in part.shells(&f)?.iter().enumerate() {
        println!("shell {:>2}: ||Delta f|| = {:.4}", j as i32 - 1, s.norm_l2());
        sum = sum.add(s)?;
    }
    println!("partition of unity error {:.1e}", sum.distance(&f)?);

    let (tgf, tfg, rem) = bony_decomposition(&part, &g, &f, 1.0)?;
    let product = g.mul_dealiased(&f, 1.0)?;
    let pieces = tgf.add(&tfg)?.add(&rem)?;
    println!("T_g f {:.4}, T_f g {:.4}, R {:.4}", tgf.norm_l2(), tfg.norm_l2(), rem.norm_l2());
    println!(
        "low-pass part of gf reproduced to {:.1e}",
        part.low_pass(&product, part.j_max())?.distance(&part.low_pass(&pieces, part.j_max())?)?
    );
    Ok(())
}
