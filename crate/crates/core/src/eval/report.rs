use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BehaviorTally, EvalReport, PredictionRecord};
use crate::formula::PatternId;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    UnwritablePath {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn unwritable(path: &Path) -> impl Fn(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::UnwritablePath {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_unwritable(path: &Path) -> impl Fn(csv::Error) -> ReportError + '_ {
    move |e| ReportError::UnwritablePath {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

/// One line per datapoint; an empty line is an empty output.
pub fn read_predictions(path: impl AsRef<Path>) -> Result<Vec<PredictionRecord>, ReportError> {
    let path = path.as_ref();
    let err = |source| ReportError::Unreadable {
        path: path.to_path_buf(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(err)?);
    reader
        .lines()
        .enumerate()
        .map(|(i, line)| line.map(|l| PredictionRecord::from_line(i, &l)).map_err(err))
        .collect()
}

pub fn write_predictions(path: impl AsRef<Path>, preds: &[PredictionRecord]) -> Result<(), ReportError> {
    let path = path.as_ref();
    let mut w = BufWriter::new(File::create(path).map_err(unwritable(path))?);
    for p in preds {
        writeln!(w, "{}", p.text()).map_err(unwritable(path))?;
    }
    w.flush().map_err(unwritable(path))
}

/// Writes `report.json`, `slices.csv` and, when behaviour tallies are present,
/// `behavior.csv` into `dir`. Output bytes depend only on the report.
pub fn emit_report(report: &EvalReport, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>, ReportError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(unwritable(dir))?;

    let json_path = dir.join("report.json");
    let mut json = serde_json::to_string_pretty(report).expect("report serializes");
    json.push('\n');
    fs::write(&json_path, json).map_err(unwritable(&json_path))?;

    let slices_path = dir.join("slices.csv");
    let mut w = csv::Writer::from_path(&slices_path).map_err(csv_unwritable(&slices_path))?;
    w.write_record(["pattern", "slice", "n", "syntactic_acc", "semantic_acc"])
        .map_err(csv_unwritable(&slices_path))?;
    w.write_record([
        "all".to_string(),
        "all".to_string(),
        report.counts.total.to_string(),
        report.syntactic_acc.to_string(),
        report.semantic_acc.to_string(),
    ])
    .map_err(csv_unwritable(&slices_path))?;
    for (p, slice) in &report.slices {
        for (name, acc) in [("contains", slice.contains), ("absent", slice.absent)] {
            w.write_record([
                p.to_string(),
                name.to_string(),
                acc.n.to_string(),
                acc.syntactic_acc.to_string(),
                acc.semantic_acc.to_string(),
            ])
            .map_err(csv_unwritable(&slices_path))?;
        }
    }
    w.flush().map_err(unwritable(&slices_path))?;

    let mut written = vec![json_path, slices_path];
    if !report.behavior.is_empty() {
        let path = dir.join("behavior.csv");
        write_behavior_table(&path, &behavior_rows("model", &report.behavior))?;
        written.push(path);
    }
    Ok(written)
}

/// Accuracy of one trained model (one seed) on one slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub architecture: String,
    /// Held-out pattern of the training split, `None` for the base model.
    pub pattern: Option<PatternId>,
    pub seed: u64,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizationRow {
    pub architecture: String,
    pub pattern: String,
    pub n_seeds: usize,
    pub mean: f64,
    /// Sample standard deviation over seeds divided by sqrt(n); 0 for one seed.
    pub stderr: f64,
}

/// Mean and standard error across seeds per (architecture, pattern).
pub fn aggregate_seeds(runs: &[SeedRun]) -> Vec<GeneralizationRow> {
    let mut groups: BTreeMap<(String, Option<PatternId>), Vec<f64>> = BTreeMap::new();
    for r in runs {
        groups
            .entry((r.architecture.clone(), r.pattern))
            .or_default()
            .push(r.accuracy);
    }
    groups
        .into_iter()
        .map(|((architecture, pattern), xs)| {
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            let stderr = if xs.len() < 2 {
                0.0
            } else {
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
                (var / n).sqrt()
            };
            GeneralizationRow {
                architecture,
                pattern: pattern.map_or_else(|| "base".to_string(), |p| p.to_string()),
                n_seeds: xs.len(),
                mean,
                stderr,
            }
        })
        .collect()
}

pub fn write_generalization_table(path: impl AsRef<Path>, rows: &[GeneralizationRow]) -> Result<(), ReportError> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(csv_unwritable(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_unwritable(path))?;
    }
    if rows.is_empty() {
        w.write_record(["architecture", "pattern", "n_seeds", "mean", "stderr"])
            .map_err(csv_unwritable(path))?;
    }
    w.flush().map_err(unwritable(path))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorRow {
    pub model: String,
    pub pattern: String,
    pub n: usize,
    pub correct: f64,
    pub unchanged: f64,
    pub alternative: f64,
    pub other: f64,
}

pub fn behavior_rows(model: &str, tallies: &BTreeMap<PatternId, BehaviorTally>) -> Vec<BehaviorRow> {
    tallies
        .iter()
        .map(|(p, t)| {
            let [a, b, c, d] = t.fractions();
            BehaviorRow {
                model: model.to_string(),
                pattern: p.to_string(),
                n: t.total(),
                correct: a,
                unchanged: b,
                alternative: c,
                other: d,
            }
        })
        .collect()
}

pub fn write_behavior_table(path: impl AsRef<Path>, rows: &[BehaviorRow]) -> Result<(), ReportError> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(csv_unwritable(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_unwritable(path))?;
    }
    if rows.is_empty() {
        w.write_record(["model", "pattern", "n", "correct", "unchanged", "alternative", "other"])
            .map_err(csv_unwritable(path))?;
    }
    w.flush().map_err(unwritable(path))
}
