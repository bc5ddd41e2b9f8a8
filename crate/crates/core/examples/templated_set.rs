//! Generates the templated test set, writes it with its metadata sidecar and
//! reports per-template counts, the random-guess baseline and how many
//! behaviour pairs each probed pattern yields.
//!
//! cargo run --release --example templated_set -- [out-dir]

use std::collections::BTreeMap;
use std::path::PathBuf;

use proplab::dataset::write_dataset;
use proplab::sat::random_guess_accuracy;
use proplab::template::{generate_templated_set, make_behavior_pairs, to_datapoints, write_metadata};
use proplab::PatternId;

fn main() -> anyhow::Result<()> {
    let set = generate_templated_set();

    let mut per_template: BTreeMap<u8, usize> = BTreeMap::new();
    for inst in &set {
        *per_template.entry(inst.template_id).or_default() += 1;
    }
    println!("{} formulas", set.len());
    for (t, n) in &per_template {
        println!("  template {t:>2}: {n}");
    }

    let baseline = random_guess_accuracy(set.iter().map(|i| &i.formula));
    println!("random-guess baseline {:.4}", baseline);

    for p in [PatternId::P1, PatternId::P2, PatternId::P3] {
        let pairs = make_behavior_pairs(set.iter().map(|i| &i.formula), p);
        println!("{p}: {} behaviour pairs", pairs.len());
    }

    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        std::fs::create_dir_all(&dir)?;
        write_dataset(dir.join("templated.tsv"), &to_datapoints(&set))?;
        write_metadata(dir.join("templated.meta.jsonl"), &set)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
