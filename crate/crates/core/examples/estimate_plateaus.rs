//! Ratio plateaus of the linear estimates and the commutator bounds.

use bo_lab::estimates::{run_case, SuiteParams};

fn main() -> bo_lab::Result<()> {
    let params = SuiteParams::with_seeds(5);
    for id in ["strichartz", "maximal", "smoothing", "bilinear", "commutator-low-pass", "commutator-mixed"] {
        let out = run_case(id, &params)?;
        let p = out.plateau.expect("swept case");
        println!("{id:<28} spread {:.2} over {} octaves", p.spread, p.octaves());
        for (j, hi, lo) in &p.envelope {
            println!("    j = {j}: ratio in [{lo:.4}, {hi:.4}]");
        }
    }
    Ok(())
}
