//! Frobenius symbols, successive ranks and parity blocks of a few partitions.

use parity_blocks::partitions::{self, Partition};
use parity_blocks::Sign;

fn main() -> parity_blocks::Result<()> {
    for parts in [vec![7, 5, 4, 2, 1], vec![4, 4, 3, 1], vec![6, 3, 3, 3, 2, 1, 1]] {
        let p = Partition::new(parts)?;
        let f = partitions::to_frobenius(&p)?;
        let blocks = f.parity_blocks();
        println!("{p}");
        println!("  symbol      {f}");
        println!("  ranks       {:?}", f.successive_ranks());
        println!("  blocks      {}  sizes {:?}", blocks.sign_word(), blocks.sizes());
        println!("  notation    {}", f.to_block_notation());
        assert_eq!(partitions::from_frobenius(&f), p);
    }

    let census = partitions::BlockCensus::of(20, 3);
    println!("\npartitions of 20 with a 3x3 Durfee square, by block count and last sign:");
    for m in 1..=3 {
        println!("  m = {m}  P {:>3}  N {:>3}", census.get(m, Sign::Plus), census.get(m, Sign::Minus));
    }
    println!("  total {}", census.total());
    Ok(())
}
