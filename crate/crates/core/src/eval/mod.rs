//! Scoring model outputs against exact semantics.
//!
//! An output is *syntactically* correct when it equals the reference target
//! token for token, and *semantically* correct when it is any satisfying
//! partial assignment of the formula's own variables.

mod report;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assignment::Assignment;
use crate::dataset::Datapoint;
use crate::formula::{Formula, PatternId};
use crate::sat;
use crate::template::BehaviorPair;

pub use report::{
    aggregate_seeds, behavior_rows, emit_report, read_predictions, write_behavior_table, write_generalization_table,
    write_predictions, BehaviorRow, GeneralizationRow, ReportError, SeedRun,
};

/// Token that terminates a decoded sequence.
pub const END_MARKER: &str = "<eos>";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{expected} datapoints but {found} predictions")]
    LengthMismatch { expected: usize, found: usize },
    #[error("prediction at position {position} carries index {found}")]
    IndexGap { position: usize, found: usize },
    #[error("datapoint {index}: reference target does not satisfy its formula")]
    InvalidTarget { index: usize },
}

/// One decoded output, aligned with a datapoint by `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub index: usize,
    pub tokens: Vec<String>,
}

impl PredictionRecord {
    /// Keeps only the tokens before the first [`END_MARKER`].
    pub fn from_raw<S: AsRef<str>>(index: usize, raw: &[S]) -> Self {
        let tokens = raw
            .iter()
            .map(AsRef::as_ref)
            .take_while(|t| *t != END_MARKER)
            .map(str::to_string)
            .collect();
        PredictionRecord { index, tokens }
    }

    pub fn from_line(index: usize, line: &str) -> Self {
        Self::from_raw(index, &line.split_whitespace().collect::<Vec<_>>())
    }

    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Score {
    Syntactic,
    Semantic,
    Incorrect,
    Malformed,
}

impl Score {
    pub fn is_semantically_correct(self) -> bool {
        matches!(self, Score::Syntactic | Score::Semantic)
    }
}

/// Parses `tokens` as a nonempty assignment. Token order is irrelevant here;
/// only syntactic matching cares about it.
fn parse_output<S: AsRef<str>>(tokens: &[S]) -> Option<Assignment> {
    if tokens.is_empty() {
        return None;
    }
    Assignment::parse_tokens(tokens).ok()
}

/// Semantic correctness of a raw output for `formula`. Outputs binding
/// variables outside the formula are incorrect.
pub fn semantic_score<S: AsRef<str>>(formula: &Formula, tokens: &[S]) -> Score {
    match parse_output(tokens) {
        None => Score::Malformed,
        Some(a) => match sat::satisfies_partial(formula, &a) {
            Ok(true) => Score::Semantic,
            Ok(false) | Err(_) => Score::Incorrect,
        },
    }
}

pub fn score(dp: &Datapoint, pred: &PredictionRecord) -> Score {
    if !pred.tokens.is_empty() && pred.tokens.iter().map(String::as_str).eq(dp.target.to_tokens()) {
        return Score::Syntactic;
    }
    semantic_score(&dp.formula, &pred.tokens)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreCounts {
    pub total: usize,
    pub syntactic: usize,
    /// Semantically correct but not an exact match.
    pub semantic_only: usize,
    pub incorrect: usize,
    pub malformed: usize,
}

impl ScoreCounts {
    pub fn add(&mut self, s: Score) {
        self.total += 1;
        match s {
            Score::Syntactic => self.syntactic += 1,
            Score::Semantic => self.semantic_only += 1,
            Score::Incorrect => self.incorrect += 1,
            Score::Malformed => self.malformed += 1,
        }
    }

    fn frac(&self, count: usize) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            count as f64 / self.total as f64
        }
    }

    pub fn syntactic_acc(&self) -> f64 {
        self.frac(self.syntactic)
    }

    pub fn semantic_acc(&self) -> f64 {
        self.frac(self.syntactic + self.semantic_only)
    }

    pub fn malformed_rate(&self) -> f64 {
        self.frac(self.malformed)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SliceAccuracy {
    pub n: usize,
    pub syntactic_acc: f64,
    pub semantic_acc: f64,
}

impl From<&ScoreCounts> for SliceAccuracy {
    fn from(c: &ScoreCounts) -> Self {
        SliceAccuracy {
            n: c.total,
            syntactic_acc: c.syntactic_acc(),
            semantic_acc: c.semantic_acc(),
        }
    }
}

/// Accuracy on the datapoints that contain a pattern and on those that don't.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PatternSlice {
    pub contains: SliceAccuracy,
    pub absent: SliceAccuracy,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub counts: ScoreCounts,
    pub syntactic_acc: f64,
    pub semantic_acc: f64,
    pub malformed_rate: f64,
    pub slices: BTreeMap<PatternId, PatternSlice>,
    /// Pattern whose `contains` slice is the headline number, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub focus: Option<PatternId>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub behavior: BTreeMap<PatternId, BehaviorTally>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub overlap: Vec<OverlapEntry>,
}

impl EvalReport {
    pub fn focus_slice(&self) -> Option<&PatternSlice> {
        self.focus.and_then(|p| self.slices.get(&p))
    }
}

/// Scores index-aligned predictions and slices the result by pattern.
pub fn evaluate_file(dataset: &[Datapoint], predictions: &[PredictionRecord]) -> Result<EvalReport, EvalError> {
    if dataset.len() != predictions.len() {
        return Err(EvalError::LengthMismatch {
            expected: dataset.len(),
            found: predictions.len(),
        });
    }
    if let Some((position, p)) = predictions.iter().enumerate().find(|(i, p)| p.index != *i) {
        return Err(EvalError::IndexGap {
            position,
            found: p.index,
        });
    }

    let mut counts = ScoreCounts::default();
    let mut per_pattern: BTreeMap<PatternId, (ScoreCounts, ScoreCounts)> =
        PatternId::ALL.into_iter().map(|p| (p, Default::default())).collect();
    for (index, (dp, pred)) in dataset.iter().zip(predictions).enumerate() {
        let s = score(dp, pred);
        if s == Score::Syntactic && !matches!(sat::satisfies_partial(&dp.formula, &dp.target), Ok(true)) {
            return Err(EvalError::InvalidTarget { index });
        }
        counts.add(s);
        for (p, (with, without)) in per_pattern.iter_mut() {
            if dp.formula.contains_pattern(*p) {
                with.add(s);
            } else {
                without.add(s);
            }
        }
    }

    Ok(EvalReport {
        counts,
        syntactic_acc: counts.syntactic_acc(),
        semantic_acc: counts.semantic_acc(),
        malformed_rate: counts.malformed_rate(),
        slices: per_pattern
            .iter()
            .map(|(p, (with, without))| {
                (
                    *p,
                    PatternSlice {
                        contains: with.into(),
                        absent: without.into(),
                    },
                )
            })
            .collect(),
        ..Default::default()
    })
}

/// Response to a negated formula relative to its negation-dropped variant.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BehaviorClass {
    /// Correct for the original formula.
    A,
    /// Wrong, and identical to the prediction for the modified formula.
    B,
    /// Wrong, but a valid answer for the modified formula.
    C,
    /// Anything else.
    D,
}

pub fn classify_behavior<S: AsRef<str>, T: AsRef<str>>(
    pair: &BehaviorPair,
    pred_orig: &[S],
    pred_mod: &[T],
) -> BehaviorClass {
    if semantic_score(&pair.original, pred_orig).is_semantically_correct() {
        BehaviorClass::A
    } else if pred_orig
        .iter()
        .map(AsRef::as_ref)
        .eq(pred_mod.iter().map(AsRef::as_ref))
    {
        BehaviorClass::B
    } else if semantic_score(&pair.modified, pred_orig).is_semantically_correct() {
        BehaviorClass::C
    } else {
        BehaviorClass::D
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehaviorTally {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl BehaviorTally {
    pub fn add(&mut self, class: BehaviorClass) {
        match class {
            BehaviorClass::A => self.a += 1,
            BehaviorClass::B => self.b += 1,
            BehaviorClass::C => self.c += 1,
            BehaviorClass::D => self.d += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }

    /// `[A, B, C, D]` fractions; all zero for an empty tally.
    pub fn fractions(&self) -> [f64; 4] {
        let n = self.total();
        if n == 0 {
            return [0.0; 4];
        }
        [self.a, self.b, self.c, self.d].map(|k| k as f64 / n as f64)
    }
}

/// Classifies every pair and tallies per probed pattern.
pub fn behavior_report(
    pairs: &[BehaviorPair],
    preds_orig: &[PredictionRecord],
    preds_mod: &[PredictionRecord],
) -> Result<BTreeMap<PatternId, BehaviorTally>, EvalError> {
    for preds in [preds_orig, preds_mod] {
        if preds.len() != pairs.len() {
            return Err(EvalError::LengthMismatch {
                expected: pairs.len(),
                found: preds.len(),
            });
        }
    }
    let mut out: BTreeMap<PatternId, BehaviorTally> = BTreeMap::new();
    for ((pair, o), m) in pairs.iter().zip(preds_orig).zip(preds_mod) {
        out.entry(pair.pattern)
            .or_default()
            .add(classify_behavior(pair, &o.tokens, &m.tokens));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapEntry {
    pub a: String,
    pub b: String,
    pub n: usize,
    pub fraction: f64,
}

/// Fraction of positions with identical token sequences. Two empty files
/// overlap fully.
pub fn overlap(a: &[PredictionRecord], b: &[PredictionRecord]) -> Result<f64, EvalError> {
    overlap_on(a, b, |_| true).map(|(_, f)| f)
}

/// Overlap restricted to positions where `keep(index)` holds. Returns the
/// number of kept positions alongside the fraction.
pub fn overlap_on(
    a: &[PredictionRecord],
    b: &[PredictionRecord],
    keep: impl Fn(usize) -> bool,
) -> Result<(usize, f64), EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let (mut n, mut same) = (0usize, 0usize);
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if keep(i) {
            n += 1;
            same += (x.tokens == y.tokens) as usize;
        }
    }
    Ok((n, if n == 0 { 1.0 } else { same as f64 / n as f64 }))
}

/// Pairwise overlap between every two named prediction sets.
pub fn overlap_matrix(runs: &[(String, Vec<PredictionRecord>)]) -> Result<Vec<OverlapEntry>, EvalError> {
    let mut out = Vec::new();
    for (i, (name_a, a)) in runs.iter().enumerate() {
        for (name_b, b) in &runs[i + 1..] {
            out.push(OverlapEntry {
                a: name_a.clone(),
                b: name_b.clone(),
                n: a.len(),
                fraction: overlap(a, b)?,
            });
        }
    }
    Ok(out)
}
