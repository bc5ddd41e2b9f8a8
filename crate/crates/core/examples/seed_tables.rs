//! Aggregates per-seed accuracies into mean and standard error tables.
//!
//! cargo run --example seed_tables -- [out.csv]

use proplab::eval::{aggregate_seeds, write_generalization_table, SeedRun};
use proplab::PatternId;

fn main() -> anyhow::Result<()> {
    let accuracies = [
        ("transformer", None, [0.941, 0.938, 0.944]),
        ("transformer", Some(PatternId::P1), [0.612, 0.655, 0.590]),
        ("gcn", None, [0.902, 0.897, 0.910]),
        ("gcn", Some(PatternId::P1), [0.701, 0.688, 0.720]),
    ];
    let runs: Vec<SeedRun> = accuracies
        .iter()
        .flat_map(|(arch, p, accs)| {
            accs.iter().enumerate().map(move |(seed, &accuracy)| SeedRun {
                architecture: arch.to_string(),
                pattern: *p,
                seed: seed as u64,
                accuracy,
            })
        })
        .collect();

    let rows = aggregate_seeds(&runs);
    for r in &rows {
        println!(
            "{:<12}{:<6}{:.4} ± {:.4} ({} seeds)",
            r.architecture, r.pattern, r.mean, r.stderr, r.n_seeds
        );
    }
    if let Some(path) = std::env::args().nth(1) {
        write_generalization_table(&path, &rows)?;
    }
    Ok(())
}
