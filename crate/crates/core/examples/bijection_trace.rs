//! Follows one Frobenius symbol through every stage of the bijection and back.

use parity_blocks::bijections;
use parity_blocks::partitions::FrobeniusSymbol;

fn main() -> parity_blocks::Result<()> {
    let f: FrobeniusSymbol = "(16 14 13 12 10 4 3 1 / 17 14 12 11 8 6 1 0)".parse()?;
    for stage in bijections::trace(&f)? {
        println!("{}", stage.describe());
    }

    let (pi, sign) = bijections::lambda_to_pi(&f)?;
    println!("\nweight drop from gamma to pi: {}", bijections::weight_drop(pi.beta(), sign));
    let back = bijections::pi_to_lambda(&pi, sign)?;
    println!("inverse recovers {}", back.to_block_notation());
    assert_eq!(back, f);

    println!("\nas JSON: {}", serde_json::to_string(&pi).unwrap());
    Ok(())
}
