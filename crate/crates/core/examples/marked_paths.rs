//! Marked ballot paths and their valley-minus-marks statistic.

use parity_blocks::lattice_paths::{self, MarkedBallotPath};
use parity_blocks::qseries;

fn main() -> parity_blocks::Result<()> {
    let objs = lattice_paths::enumerate_marked_paths(3, 2, 1)?;
    println!("ballot paths from (0,0) to (5,1) with at least one marked return:");
    for p in &objs {
        println!("  {p:<10} maj {:>2}  vmr {}", lattice_paths::maj(p), lattice_paths::vmr(p));
    }
    let gf = lattice_paths::gf_vmr(&objs, 10);
    println!("generating function  {gf}");
    println!("q [5 choose 4]_q      {}", qseries::qbinomial(5, 4, 10).shift(1));

    println!("\nDyck paths of semilength 4 by exact number of marks:");
    for r in 0..=4 {
        let fam = lattice_paths::enumerate_exact_marks(4, r);
        println!("  r = {r}  {:>2} paths  {}", fam.len(), lattice_paths::gf_vmr(&fam, 24));
    }

    let p: MarkedBallotPath = "uudd|ud|u".parse()?;
    println!("\nparsed {p}: returns {:?}, json {}", p.returns(), serde_json::to_string(&p).unwrap());
    Ok(())
}
