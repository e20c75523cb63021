//! The bilinear Plancherel identity: exact indicators, then random profiles.

use bo_lab::estimates::{indicator_rhs, lattice_indicator, plancherel_bilinear_identity, random_pair};

fn main() -> bo_lab::Result<()> {
    let (d_eta, len) = (1.0 / 2048.0, 8192);
    let f = lattice_indicator(d_eta, len, 2.5, 3.5);
    let g = lattice_indicator(d_eta, len, 0.5, 1.5);
    println!("closed form {:.6}", indicator_rhs(2.5, 3.5, 0.5, 1.5));
    for span in [125.0, 250.0, 500.0, 1000.0] {
        let out = plancherel_bilinear_identity(&f, &g, span)?;
        println!("T = {span:>6}: lhs {:.6}, rhs {:.6}, rel err {:.2e}", out.lhs, out.rhs, out.rel_err);
    }
    for seed in 0..3 {
        let (f, g) = random_pair(d_eta, len, seed);
        let out = plancherel_bilinear_identity(&f, &g, 500.0)?;
        println!("random pair {seed}: rel err {:.2e}", out.rel_err);
    }
    Ok(())
}
