//! Runs every acceptance criterion and prints one line per criterion.

use nilgeom_cli::acceptance::{run_all, DEFAULT_SEED};

fn main() {
    let summary = run_all(DEFAULT_SEED);
    for c in &summary.criteria {
        println!("{}", c.line());
    }
    let passed = summary.criteria.iter().filter(|c| c.passed).count();
    println!(
        "acceptance: {passed}/{} criteria passed",
        summary.criteria.len()
    );
    if !summary.passed {
        std::process::exit(1);
    }
}
