//! Scores a synthetic prediction set against a generated dataset and writes
//! the JSON/CSV report.
//!
//! The "model" copies the target a third of the time, answers with a full
//! satisfying world a third of the time and guesses otherwise.
//!
//! cargo run --release --example score_predictions -- [out-dir]

use proplab::dataset::{generate_dataset, DatasetSpec};
use proplab::eval::{emit_report, evaluate_file, score, PredictionRecord};
use proplab::sat::enumerate_models;
use proplab::{Datapoint, PatternId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn synthetic_prediction(i: usize, dp: &Datapoint, rng: &mut impl Rng) -> PredictionRecord {
    let tokens: Vec<String> = match rng.random_range(0..3) {
        0 => dp.target.to_tokens().iter().map(|t| t.to_string()).collect(),
        1 => enumerate_models(&dp.formula)[0]
            .to_tokens()
            .iter()
            .map(|t| t.to_string())
            .collect(),
        _ => {
            let mut tokens = Vec::new();
            for v in dp.formula.vars() {
                if rng.random_bool(0.7) {
                    tokens.push(v.name().to_string());
                    tokens.push(rng.random_range(0..2u8).to_string());
                }
            }
            tokens
        }
    };
    PredictionRecord::from_raw(i, &tokens)
}

fn main() -> anyhow::Result<()> {
    let f = "& ! a | b c";
    let dp = Datapoint::with_picked_target(f.parse()?)?;
    let dp = Datapoint {
        target: "a 0 b 1".parse()?,
        ..dp
    };
    for pred in ["a 1 b 0", "a 0 b 0 c 1", "a 0 c 1", "a 0 b 1", "a 0 a 1", ""] {
        println!(
            "{f} / {} / {pred:<12} -> {:?}",
            dp.target,
            score(&dp, &PredictionRecord::from_line(0, pred))
        );
    }

    let data = generate_dataset(&DatasetSpec::standard(10_000, 3))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let preds: Vec<PredictionRecord> = data
        .iter()
        .enumerate()
        .map(|(i, dp)| synthetic_prediction(i, dp, &mut rng))
        .collect();

    let mut report = evaluate_file(&data, &preds)?;
    report.focus = Some(PatternId::P1);
    println!(
        "\nsyntactic {:.4}  semantic {:.4}  malformed {:.4}",
        report.syntactic_acc, report.semantic_acc, report.malformed_rate
    );
    for (p, s) in &report.slices {
        println!(
            "  {p}: contains {:.4} (n={})  absent {:.4} (n={})",
            s.contains.semantic_acc, s.contains.n, s.absent.semantic_acc, s.absent.n
        );
    }

    let dir = match std::env::args().nth(1) {
        Some(d) => d.into(),
        None => std::env::temp_dir().join("proplab-report"),
    };
    for path in emit_report(&report, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
