//! Tree-path and adjacency annotations for structure-aware encoders.
//!
//! cargo run --example annotate_trees -- "& ! a | b c"

use proplab::annotate::{annotate, AnnotationRecord, DEFAULT_DEPTH_CAP};
use proplab::Formula;

fn main() -> anyhow::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "& ! a | b c".to_string());
    let f: Formula = text.parse()?;
    let ann = annotate(&f, DEFAULT_DEPTH_CAP)?;
    for (i, tok) in ann.tokens.iter().enumerate() {
        let path: String = ann.branches[i].iter().map(|b| b.to_string()).collect();
        println!("{i:>2} {tok:<4} path [{path}] neighbours {:?}", ann.adjacency[i]);
    }
    println!("{} edges including self loops", ann.edge_count());
    println!("{}", serde_json::to_string(&AnnotationRecord::new(0, &ann))?);
    Ok(())
}
