use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use proplab::annotate::{write_annotations, DEFAULT_DEPTH_CAP};
use proplab::dataset::{self, read_dataset, write_dataset, DatasetSpec};
use proplab::eval::{self, read_predictions};
use proplab::split::{make_split, verify_absent, SplitSpec};
use proplab::template::{self, read_pairs, write_pairs};
use proplab::PatternId;

#[derive(Parser)]
#[command(
    name = "proplab",
    version,
    about = "Satisfying-assignment datasets, splits and scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a length-balanced dataset of satisfiable formulas
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        min_len: usize,
        #[arg(long, default_value_t = 35)]
        max_len: usize,
        /// Flip binary nodes with probability 1/2 after generation
        #[arg(long)]
        balance: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Randomly flip binary subtrees of an existing dataset
    Balance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Length histogram, subtree sizes, pattern rates and difficulty
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the training set with one pattern held out
    Split {
        #[arg(long)]
        pattern: PatternId,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the templated test set and its metadata sidecar
    Templates {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Build negation-dropped behaviour pairs from a dataset file
    Pairs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        pattern: PatternId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write tree paths and adjacency lists per datapoint
    Annotate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
    },
    /// Score a prediction file
    Eval {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        preds: PathBuf,
        #[arg(long)]
        slice_pattern: Option<PatternId>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify responses to negated formulas against their modified pairs
    Behavior {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        preds_orig: PathBuf,
        #[arg(long)]
        preds_mod: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "model")]
        model: String,
    },
    /// Fraction of identical predictions between two files
    Overlap {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Restrict to datapoints of this file that lack `--exclude-pattern`
        #[arg(long, requires = "exclude_pattern")]
        data: Option<PathBuf>,
        #[arg(long, requires = "data")]
        exclude_pattern: Option<PatternId>,
    },
}

fn read(path: &Path) -> Result<Vec<proplab::Datapoint>> {
    read_dataset(path).with_context(|| format!("reading {}", path.display()))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate {
            n,
            seed,
            min_len,
            max_len,
            balance,
            out,
        } => {
            let spec = DatasetSpec::new(min_len, max_len, n, seed);
            let mut ds = dataset::generate_dataset(&spec)?;
            if balance {
                ds = dataset::balance_trees(&ds, seed);
            }
            write_dataset(&out, &ds)?;
            eprintln!("wrote {} datapoints to {}", ds.len(), out.display());
        }
        Command::Balance { input, seed, out } => {
            let ds = dataset::balance_trees(&read(&input)?, seed);
            write_dataset(&out, &ds)?;
        }
        Command::Stats { input, out } => {
            let stats = dataset::dataset_stats(&read(&input)?);
            match out {
                Some(path) => write_json(&path, &stats)?,
                None => println!("{}", serde_json::to_string_pretty(&stats)?),
            }
        }
        Command::Split { pattern, input, out } => {
            let spec = SplitSpec::for_pattern(pattern);
            let ds = read(&input)?;
            let split = make_split(&ds, spec);
            write_dataset(&out, &split)?;
            let report = verify_absent(&split, pattern);
            let mut report_path = out.clone().into_os_string();
            report_path.push(".report.json");
            write_json(
                Path::new(&report_path),
                &serde_json::json!({
                    "split": spec,
                    "input_datapoints": ds.len(),
                    "verification": report,
                }),
            )?;
            println!(
                "{pattern} ({:?}): {} -> {} datapoints, {} remaining occurrences",
                spec.method,
                ds.len(),
                split.len(),
                report.occurrences
            );
            if !report.is_clean() {
                bail!("split still contains {pattern}");
            }
        }
        Command::Templates { out, meta } => {
            let set = template::generate_templated_set();
            write_dataset(&out, &template::to_datapoints(&set))?;
            if let Some(meta) = meta {
                template::write_metadata(&meta, &set)?;
            }
            eprintln!("wrote {} templated formulas to {}", set.len(), out.display());
        }
        Command::Pairs { input, pattern, out } => {
            let ds = read(&input)?;
            let pairs = template::make_behavior_pairs(ds.iter().map(|dp| &dp.formula), pattern);
            write_pairs(&out, &pairs)?;
            eprintln!("wrote {} pairs to {}", pairs.len(), out.display());
        }
        Command::Annotate { input, out, depth_cap } => {
            write_annotations(&out, &read(&input)?, depth_cap)?;
        }
        Command::Eval {
            data,
            preds,
            slice_pattern,
            out,
        } => {
            let ds = read(&data)?;
            let preds = read_predictions(&preds)?;
            let mut report = eval::evaluate_file(&ds, &preds)?;
            report.focus = slice_pattern;
            eval::emit_report(&report, &out)?;
            println!(
                "syntactic {:.4}  semantic {:.4}  malformed {:.4}  (n = {})",
                report.syntactic_acc, report.semantic_acc, report.malformed_rate, report.counts.total
            );
            if let (Some(p), Some(slice)) = (report.focus, report.focus_slice()) {
                println!(
                    "{p} contains: semantic {:.4} (n = {})  absent: semantic {:.4} (n = {})",
                    slice.contains.semantic_acc, slice.contains.n, slice.absent.semantic_acc, slice.absent.n
                );
            }
        }
        Command::Behavior {
            pairs,
            preds_orig,
            preds_mod,
            out,
            model,
        } => {
            let pairs = read_pairs(&pairs)?;
            let tallies =
                eval::behavior_report(&pairs, &read_predictions(&preds_orig)?, &read_predictions(&preds_mod)?)?;
            let rows = eval::behavior_rows(&model, &tallies);
            for r in &rows {
                println!(
                    "{} n={}  A {:.4}  B {:.4}  C {:.4}  D {:.4}",
                    r.pattern, r.n, r.correct, r.unchanged, r.alternative, r.other
                );
            }
            if let Some(out) = out {
                eval::write_behavior_table(&out, &rows)?;
            }
        }
        Command::Overlap {
            a,
            b,
            data,
            exclude_pattern,
        } => {
            let (a, b) = (read_predictions(&a)?, read_predictions(&b)?);
            let (n, fraction) = match (data, exclude_pattern) {
                (Some(data), Some(p)) => {
                    let ds = read(&data)?;
                    if ds.len() != a.len() {
                        bail!("{} datapoints but {} predictions", ds.len(), a.len());
                    }
                    eval::overlap_on(&a, &b, |i| !ds[i].formula.contains_pattern(p))?
                }
                _ => (a.len(), eval::overlap(&a, &b)?),
            };
            println!("overlap {fraction:.4} (n = {n})");
        }
    }
    Ok(())
}
