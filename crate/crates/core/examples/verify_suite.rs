//! Runs the full verification suite on its default grids and prints a summary.

use parity_blocks::verify::{self, SuiteSummary, VerifyConfig};

fn main() -> parity_blocks::Result<()> {
    let reports = verify::suite(&VerifyConfig::default())?;
    for r in reports.iter().filter(|r| !r.passed()).take(10) {
        println!("{}", r.summary_line());
    }
    let summary = SuiteSummary::of(&reports);
    println!("{} checks, {} passed, {} failed", summary.total, summary.passed, summary.failed);
    if summary.failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
