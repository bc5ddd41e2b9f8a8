//! Generates a small length-balanced dataset, rebalances its trees and
//! prints summary statistics.
//!
//! cargo run --example generate_dataset -- [n] [seed]

use proplab::dataset::{balance_trees, dataset_stats, format_datapoint, generate_dataset, DatasetSpec};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5_000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(42);

    let spec = DatasetSpec::standard(n, seed);
    let raw = generate_dataset(&spec)?;
    let balanced = balance_trees(&raw, seed);

    for dp in balanced.iter().take(5) {
        println!("{}", format_datapoint(dp));
    }

    for (name, ds) in [("generated", &raw), ("balanced", &balanced)] {
        let s = dataset_stats(ds);
        println!(
            "{name:>9}: n={} root {:.2}/{:.2} all-node {:.2}/{:.2} world {:.3} partial {:.3}",
            s.n,
            s.subtrees.root_left,
            s.subtrees.root_right,
            s.subtrees.all_left,
            s.subtrees.all_right,
            s.mean_world_ratio,
            s.mean_partial_ratio,
        );
    }

    let stats = dataset_stats(&balanced);
    println!("pattern rates:");
    for (p, rate) in &stats.pattern_rates {
        println!("  {p} {:<28} {:.2}%", p.description(), 100.0 * rate);
    }
    Ok(())
}
