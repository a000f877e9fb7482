//! Exact counts next to the three closed forms they are compared against.

use parity_blocks::partitions;
use parity_blocks::qseries;
use parity_blocks::Sign;

fn main() -> parity_blocks::Result<()> {
    let (d, m, sign, top) = (3, 2, Sign::Plus, 30);
    let series = qseries::closed_form_main(d, m, sign, top)?;
    println!("a^{sign}_{m}(n; {d}) for n <= {top}");
    for n in 0..=top {
        let exact = if n == 0 { 0 } else { partitions::count_a(n as u64, d, m, sign) };
        if exact > 0 {
            println!("  n = {n:>2}  count {exact:>4}  series {}", series.coeff(n));
        }
    }

    println!("\nsummed over columns, then over blocks (n = 25):");
    for k in 1..=4 {
        for sign in Sign::BOTH {
            let by_blocks = partitions::count_a_by_blocks(25, k, sign);
            let by_columns = partitions::count_a_by_columns(25, k, sign);
            let sb = qseries::closed_form_by_blocks(k, sign, 25)?.coeff(25);
            let sc = qseries::closed_form_by_columns(k, sign, 25)?.coeff(25);
            println!("  k = {k} {sign}  blocks {by_blocks:>4} ({sb})  columns {by_columns:>4} ({sc})");
        }
    }
    Ok(())
}
