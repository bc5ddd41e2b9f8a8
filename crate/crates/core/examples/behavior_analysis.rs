//! Behavioural analysis on the templated set with two synthetic models: one
//! that solves every formula and one that ignores the probed negation.
//!
//! cargo run --release --example behavior_analysis

use proplab::eval::{behavior_report, behavior_rows, PredictionRecord};
use proplab::sat::pick_target;
use proplab::template::{generate_templated_set, make_behavior_pairs, BehaviorPair};
use proplab::{Formula, PatternId};

fn answer(i: usize, f: &Formula) -> PredictionRecord {
    let tokens = pick_target(f).expect("satisfiable").to_tokens();
    PredictionRecord::from_raw(i, &tokens)
}

fn main() -> anyhow::Result<()> {
    let set = generate_templated_set();
    let pairs: Vec<BehaviorPair> = [PatternId::P1, PatternId::P2, PatternId::P3]
        .into_iter()
        .flat_map(|p| make_behavior_pairs(set.iter().map(|i| &i.formula), p))
        .collect();

    let on_modified: Vec<_> = pairs.iter().enumerate().map(|(i, p)| answer(i, &p.modified)).collect();
    let solver: Vec<_> = pairs.iter().enumerate().map(|(i, p)| answer(i, &p.original)).collect();

    for (name, on_original) in [("solver", &solver), ("ignores-negation", &on_modified)] {
        let tallies = behavior_report(&pairs, on_original, &on_modified)?;
        for r in behavior_rows(name, &tallies) {
            println!(
                "{:<17}{} n={:<5} A {:.3}  B {:.3}  C {:.3}  D {:.3}",
                r.model, r.pattern, r.n, r.correct, r.unchanged, r.alternative, r.other
            );
        }
    }
    Ok(())
}
