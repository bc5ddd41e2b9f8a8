//! Training sets with one pattern held out.
//!
//! P1, P2, P3 and P5 are eliminated by equivalence-preserving rewrites, so the
//! split keeps every datapoint and its target. P4, P6 and P7 have no local
//! rewrite that avoids reintroducing a sibling pattern, so their datapoints are
//! dropped instead.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Datapoint;
use crate::formula::{Connective, Formula, PatternId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitMethod {
    Rewrite,
    Remove,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub pattern: PatternId,
    pub method: SplitMethod,
}

impl SplitSpec {
    pub fn for_pattern(pattern: PatternId) -> Self {
        let method = match pattern {
            PatternId::P1 | PatternId::P2 | PatternId::P3 | PatternId::P5 => SplitMethod::Rewrite,
            PatternId::P4 | PatternId::P6 | PatternId::P7 => SplitMethod::Remove,
        };
        SplitSpec { pattern, method }
    }

    pub fn all() -> impl Iterator<Item = SplitSpec> {
        PatternId::ALL.into_iter().map(SplitSpec::for_pattern)
    }
}

/// Rewrites `f` into an equivalent formula without `pattern`.
///
/// Runs bottom-up: every node is rebuilt from already-normalized children,
/// and a rule firing re-normalizes the nodes it creates. Double negations are
/// cancelled wherever they appear. Patterns without a rewrite rule (P4, P6,
/// P7) only get the double-negation cleanup.
pub fn rewrite_eliminate(f: &Formula, pattern: PatternId) -> Formula {
    match f {
        Formula::Var(v) => Formula::Var(*v),
        Formula::Not(c) => make_not(rewrite_eliminate(c, pattern), pattern),
        Formula::Bin(op, l, r) => make_bin(
            *op,
            rewrite_eliminate(l, pattern),
            rewrite_eliminate(r, pattern),
            pattern,
        ),
    }
}

/// Builds `! child` for a normalized `child`, firing the negation rules.
fn make_not(child: Formula, pattern: PatternId) -> Formula {
    match (pattern, child) {
        (_, Formula::Not(inner)) => *inner,
        // ! & A B  =>  | !A !B
        (PatternId::P1, Formula::Bin(Connective::And, a, b)) => {
            make_bin(Connective::Or, make_not(*a, pattern), make_not(*b, pattern), pattern)
        }
        // ! | A B  =>  & !A !B
        (PatternId::P2, Formula::Bin(Connective::Or, a, b)) => {
            make_bin(Connective::And, make_not(*a, pattern), make_not(*b, pattern), pattern)
        }
        // ! xor A B  =>  <-> A B
        (PatternId::P3, Formula::Bin(Connective::Xor, a, b)) => Formula::Bin(Connective::Iff, a, b),
        (_, child) => Formula::not(child),
    }
}

/// Builds `op lhs rhs` from normalized operands, firing the P5 rules.
fn make_bin(op: Connective, lhs: Formula, rhs: Formula, pattern: PatternId) -> Formula {
    if pattern != PatternId::P5 || op != Connective::And || !lhs.is_not() {
        return Formula::bin(op, lhs, rhs);
    }
    match (lhs, rhs) {
        // & !A !B  =>  ! | A B
        (Formula::Not(a), Formula::Not(b)) => make_not(Formula::bin(Connective::Or, *a, *b), pattern),
        // & !A C  =>  & C !A
        (lhs, rhs) => Formula::bin(Connective::And, rhs, lhs),
    }
}

/// Applies a split to a whole dataset. Output order follows input order.
pub fn make_split(dataset: &[Datapoint], spec: SplitSpec) -> Vec<Datapoint> {
    match spec.method {
        SplitMethod::Rewrite => dataset
            .par_iter()
            .map(|dp| Datapoint {
                formula: rewrite_eliminate(&dp.formula, spec.pattern),
                target: dp.target,
            })
            .collect(),
        SplitMethod::Remove => dataset
            .iter()
            .filter(|dp| !dp.formula.contains_pattern(spec.pattern))
            .cloned()
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsenceReport {
    pub pattern: PatternId,
    pub datapoints: usize,
    /// Total matching parent–child pairs.
    pub occurrences: usize,
    /// Zero-based indices of datapoints that contain the pattern.
    pub offending: Vec<usize>,
}

impl AbsenceReport {
    pub fn is_clean(&self) -> bool {
        self.occurrences == 0
    }
}

pub fn verify_absent(dataset: &[Datapoint], pattern: PatternId) -> AbsenceReport {
    let mut occurrences = 0;
    let mut offending = Vec::new();
    for (i, dp) in dataset.iter().enumerate() {
        let n = dp.formula.count_pattern(pattern);
        if n > 0 {
            occurrences += n;
            offending.push(i);
        }
    }
    AbsenceReport {
        pattern,
        datapoints: dataset.len(),
        occurrences,
        offending,
    }
}
