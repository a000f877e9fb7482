//! The two-rowed posets S_beta, their linear extensions and poset partitions.

use parity_blocks::lattice_paths;
use parity_blocks::posets::{self, Composition, SBetaStructure};

fn main() -> parity_blocks::Result<()> {
    let beta: Composition = "2,1".parse()?;
    let s = SBetaStructure::new(beta.clone());
    println!("S_beta for beta = {beta}");
    for i in 1..=s.row_count() {
        println!("  row {i}: {:?}", s.row_labels(i));
    }

    println!("linear extensions, their maj and the matching Dyck path:");
    for w in posets::linear_extensions(&s) {
        let d = posets::word_to_dyck(&w);
        println!("  {w:<14} maj {:>2}   {d:<10} maj {:>2}", posets::maj_word(w.word()), lattice_paths::maj(&d));
    }
    let poly = posets::extension_maj_polynomial(&s);
    println!("maj polynomial coefficients {poly:?}");

    let hist = posets::enumerate_poset_partitions(&s, 10);
    println!("poset partitions by weight up to 10: {hist:?}");
    for p in posets::list_poset_partitions(&s, 2) {
        println!("  weight {}  {p}", p.weight());
    }
    Ok(())
}
