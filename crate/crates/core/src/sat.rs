//! Exact brute-force semantics for formulas over at most five variables.
//!
//! Everything here enumerates worlds. With five variables there are only 32
//! complete and 242 nonempty partial assignments, so enumeration is exact and
//! cheap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assignment::Assignment;
use crate::formula::{Formula, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("assignment binds `{0}`, which does not occur in the formula")]
    ForeignVariable(Variable),
    #[error("formula is unsatisfiable")]
    Unsatisfiable,
}

/// True iff every completion of `a` over `vars(f)` makes `f` true.
///
/// Checked by enumerating the `2^k` completions of the `k` unbound variables.
pub fn satisfies_partial(f: &Formula, a: &Assignment) -> Result<bool, SatError> {
    let vars = f.vars();
    if let Some(foreign) = a.variables().find(|v| !vars.contains(v)) {
        return Err(SatError::ForeignVariable(foreign));
    }
    let free: Vec<Variable> = vars.iter().copied().filter(|v| a.get(*v).is_none()).collect();
    for bits in 0u32..(1 << free.len()) {
        let mut world = *a;
        for (i, v) in free.iter().enumerate() {
            world.set(*v, bits >> i & 1 == 1);
        }
        let value = f
            .evaluate(world.as_world())
            .expect("every formula variable is bound in a completion");
        if !value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Satisfying complete assignments over `vars(f)`, lexicographically ordered
/// (alphabetical variables, 0 before 1).
pub fn enumerate_models(f: &Formula) -> Vec<Assignment> {
    let vars: Vec<Variable> = f.vars().into_iter().collect();
    let tt = f.truth_table();
    let n = vars.len();
    (0u32..(1 << n))
        .filter_map(|code| {
            // the first variable is the most significant digit
            let world = vars.iter().enumerate().fold(Assignment::new(), |acc, (i, v)| {
                acc.with(*v, code >> (n - 1 - i) & 1 == 1)
            });
            (world.cube_mask() & tt != 0).then_some(world)
        })
        .collect()
}

pub fn is_satisfiable(f: &Formula) -> bool {
    f.truth_table() != 0
}

/// Fraction of complete and nonempty partial assignments that satisfy `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifficultyProfile {
    pub world_ratio: f64,
    pub partial_ratio: f64,
    pub num_vars: usize,
    pub models: usize,
    pub satisfying_partials: usize,
}

pub fn difficulty(f: &Formula) -> DifficultyProfile {
    let tt = f.truth_table();
    let vars: Vec<Variable> = f.vars().into_iter().collect();
    let n = vars.len();

    // f ignores variables outside vars(f), so counting vocabulary worlds
    // gives the same ratio as counting worlds over vars(f)
    let world_ratio = tt.count_ones() as f64 / 32.0;
    let models = tt.count_ones() as usize >> (5 - n);

    let mut satisfying = 0usize;
    for code in 1..3usize.pow(n as u32) {
        let mut rest = code;
        let mut cube = u32::MAX;
        for v in &vars {
            let mask = crate::formula::VAR_MASKS[v.index()];
            match rest % 3 {
                1 => cube &= !mask,
                2 => cube &= mask,
                _ => {}
            }
            rest /= 3;
        }
        if cube & !tt == 0 {
            satisfying += 1;
        }
    }
    let denom = 3usize.pow(n as u32) - 1;
    DifficultyProfile {
        world_ratio,
        partial_ratio: satisfying as f64 / denom as f64,
        num_vars: n,
        models,
        satisfying_partials: satisfying,
    }
}

/// Deterministic satisfying partial assignment.
///
/// Starts from the lexicographically first model and drops variables in
/// reverse alphabetical order whenever the remainder still satisfies `f`.
pub fn pick_target(f: &Formula) -> Result<Assignment, SatError> {
    let tt = f.truth_table();
    let mut target = *enumerate_models(f).first().ok_or(SatError::Unsatisfiable)?;
    let bound: Vec<Variable> = target.variables().collect();
    for v in bound.into_iter().rev() {
        let mut candidate = target;
        candidate.unset(v);
        if !candidate.is_empty() && candidate.cube_mask() & !tt == 0 {
            target = candidate;
        }
    }
    Ok(target)
}

/// Mean probability that a uniformly random nonempty partial assignment over
/// each formula's own variables is a satisfying one.
pub fn random_guess_accuracy<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> f64 {
    let (sum, n) = formulas
        .into_iter()
        .fold((0.0, 0usize), |(s, n), f| (s + difficulty(f).partial_ratio, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}
