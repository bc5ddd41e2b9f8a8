//! Pairwise prediction overlap between synthetic runs, overall and on the
//! datapoints that lack a held-out pattern.
//!
//! cargo run --release --example prediction_overlap

use proplab::dataset::{generate_dataset, DatasetSpec};
use proplab::eval::{overlap_matrix, overlap_on, PredictionRecord};
use proplab::sat::enumerate_models;
use proplab::{Datapoint, PatternId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Picks the canonical target with probability `p_target`, else the last model.
fn run(data: &[Datapoint], seed: u64, p_target: f64) -> Vec<PredictionRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    data.iter()
        .enumerate()
        .map(|(i, dp)| {
            let a = if rng.random_bool(p_target) {
                dp.target
            } else {
                *enumerate_models(&dp.formula).last().unwrap()
            };
            PredictionRecord::from_raw(i, &a.to_tokens())
        })
        .collect()
}

fn main() -> anyhow::Result<()> {
    let data = generate_dataset(&DatasetSpec::standard(5_000, 11))?;
    let runs = vec![
        ("base".to_string(), run(&data, 1, 0.9)),
        ("split-P1".to_string(), run(&data, 2, 0.8)),
        ("split-P2".to_string(), run(&data, 3, 0.6)),
    ];
    for e in overlap_matrix(&runs)? {
        println!("{:>9} vs {:<9} {:.4} (n={})", e.a, e.b, e.fraction, e.n);
    }
    let (n, frac) = overlap_on(&runs[0].1, &runs[1].1, |i| {
        !data[i].formula.contains_pattern(PatternId::P1)
    })?;
    println!("base vs split-P1 without P1: {frac:.4} (n={n})");
    Ok(())
}
