//! Parsing, evaluation, model enumeration, difficulty and target selection
//! for a handful of formulas.
//!
//! cargo run --example formula_basics -- "& ! a | b c"

use proplab::sat::{difficulty, enumerate_models, pick_target, satisfies_partial};
use proplab::{Assignment, Formula};

fn main() -> anyhow::Result<()> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["& ! a | b c".to_string(), "xor a <-> b c".into(), "| ! & a b e".into()]
    } else {
        inputs
    };

    for text in &inputs {
        let f: Formula = text.parse()?;
        let d = difficulty(&f);
        println!("{f}");
        println!("  size {}  depth {}  patterns {:?}", f.size(), f.depth(), f.patterns());
        println!(
            "  {} models over {} variables, world ratio {:.3}, partial ratio {:.3}",
            d.models, d.num_vars, d.world_ratio, d.partial_ratio
        );
        let models: Vec<String> = enumerate_models(&f).iter().map(Assignment::to_string).collect();
        println!("  models: {}", models.join(" | "));
        println!("  target: {}", pick_target(&f)?);
    }

    let f: Formula = "& ! a | b c".parse()?;
    for guess in ["a 0 b 1", "a 0 c 1", "a 0 b 0 c 1", "a 1 b 0"] {
        let a: Assignment = guess.parse()?;
        println!("{guess:<12} satisfies {f}: {}", satisfies_partial(&f, &a)?);
    }
    Ok(())
}
