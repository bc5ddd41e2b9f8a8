//! Builds all seven held-out training splits from one generated dataset and
//! checks that each pattern is gone.
//!
//! cargo run --release --example held_out_splits -- [n]

use proplab::dataset::{generate_dataset, DatasetSpec};
use proplab::split::{make_split, rewrite_eliminate, verify_absent, SplitSpec};
use proplab::{Formula, PatternId};

fn main() -> anyhow::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20_000);
    let base = generate_dataset(&DatasetSpec::standard(n, 7))?;

    println!(
        "{:<4}{:<9}{:>10}{:>10}{:>12}",
        "", "method", "before", "after", "remaining"
    );
    for spec in SplitSpec::all() {
        let before = base
            .iter()
            .filter(|dp| dp.formula.contains_pattern(spec.pattern))
            .count();
        let split = make_split(&base, spec);
        let report = verify_absent(&split, spec.pattern);
        println!(
            "{:<4}{:<9}{:>10}{:>10}{:>12}",
            spec.pattern,
            format!("{:?}", spec.method),
            before,
            split.len(),
            report.occurrences
        );
    }

    let f: Formula = "! & & a b c".parse()?;
    println!("\n{f}  =>  {}", rewrite_eliminate(&f, PatternId::P1));
    let f: Formula = "! xor a ! | b c".parse()?;
    println!("{f}  =>  {}", rewrite_eliminate(&f, PatternId::P3));
    Ok(())
}
