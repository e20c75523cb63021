//! Products of space-time frequency blocks against their case bounds.

use bo_lab::estimates::{block_cases, block_product_ratio, vanishing_cases, Plateau};

fn main() -> bo_lab::Result<()> {
    let seeds: Vec<u64> = (0..4).collect();
    for case in block_cases() {
        let reports = block_product_ratio(&case, &seeds)?;
        let p = Plateau::from_reports(&reports, |r| r.indices[case.swept].unwrap_or(0));
        println!("{:<22} signs {} spread {:.2}", case.id, case.signs(), p.spread);
    }
    let vanishing = vanishing_cases(6, 0)?;
    let worst = vanishing.iter().map(|v| v.4).fold(0.0, f64::max);
    println!("{} support-incompatible triples, largest relative output {worst:.1e}", vanishing.len());
    Ok(())
}
