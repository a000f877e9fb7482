//! Truncated q-series: Euler's product, Gaussian binomials and the closed forms.

use parity_blocks::qseries::{self, QSeries};
use parity_blocks::Sign;

fn main() -> parity_blocks::Result<()> {
    let prec = 20;
    let euler = qseries::euler_inverse(prec);
    println!("1/(q;q)_inf   {}", euler.to_csv().replace('\n', " "));

    let product = qseries::pochhammer(1, prec, prec);
    println!("(q;q)_inf * 1/(q;q)_inf == 1: {}", product.mul(&euler) == QSeries::one(prec));

    println!("\nGaussian binomials [6 choose k]_q:");
    for k in 0..=6 {
        let coeffs: Vec<String> = qseries::qbinomial_poly(6, k).iter().map(|c| c.to_string()).collect();
        println!("  k = {k}  {}", coeffs.join(" "));
    }

    let (lhs, rhs) = qseries::qbinomial_sum_sides(4);
    println!("\nq-binomial sum identity at d = 4 holds: {}", lhs == rhs);

    for sign in Sign::BOTH {
        let s = qseries::closed_form_main(3, 2, sign, prec)?;
        println!("main closed form d=3 m=2 {sign}: {s}");
    }
    println!("\np(100) = {}", qseries::partition_number(100));
    Ok(())
}
