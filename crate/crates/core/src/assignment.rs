//! Partial truth assignments and their `var bit` surface form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Variable, NUM_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentError {
    #[error("odd number of tokens, expected `var bit` pairs")]
    OddTokenCount,
    #[error("`{0}` is not a variable")]
    NotAVariable(String),
    #[error("`{0}` is not a truth value, expected 0 or 1")]
    NotABit(String),
    #[error("variable `{0}` is bound twice")]
    DuplicateBinding(Variable),
}

/// A possibly partial mapping from variables to truth values.
///
/// Bindings are stored by variable index, so iteration and serialization are
/// always in alphabetical order.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: [Option<bool>; NUM_VARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, bool)>) -> Result<Self, AssignmentError> {
        let mut a = Assignment::new();
        for (v, b) in pairs {
            if a.get(v).is_some() {
                return Err(AssignmentError::DuplicateBinding(v));
            }
            a.set(v, b);
        }
        Ok(a)
    }

    /// Parses alternating `var bit` tokens. Order does not matter; repeats do.
    pub fn parse_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, AssignmentError> {
        if !tokens.len().is_multiple_of(2) {
            return Err(AssignmentError::OddTokenCount);
        }
        let pairs = tokens
            .chunks(2)
            .map(|pair| {
                let (v, b) = (pair[0].as_ref(), pair[1].as_ref());
                let var = Variable::from_name(v).ok_or_else(|| AssignmentError::NotAVariable(v.to_string()))?;
                let bit = match b {
                    "0" => false,
                    "1" => true,
                    _ => return Err(AssignmentError::NotABit(b.to_string())),
                };
                Ok((var, bit))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Assignment::from_pairs(pairs)
    }

    pub fn get(&self, v: Variable) -> Option<bool> {
        self.values[v.index()]
    }

    pub fn set(&mut self, v: Variable, value: bool) {
        self.values[v.index()] = Some(value);
    }

    pub fn unset(&mut self, v: Variable) {
        self.values[v.index()] = None;
    }

    pub fn with(mut self, v: Variable, value: bool) -> Self {
        self.set(v, value);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    pub fn len(&self) -> usize {
        self.values.iter().flatten().count()
    }

    pub fn bound(&self) -> impl Iterator<Item = (Variable, bool)> + '_ {
        Variable::ALL.into_iter().filter_map(|v| self.get(v).map(|b| (v, b)))
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.bound().map(|(v, _)| v)
    }

    pub(crate) fn as_world(&self) -> &[Option<bool>; NUM_VARS] {
        &self.values
    }

    /// Set of the 32 vocabulary worlds consistent with this assignment.
    pub(crate) fn cube_mask(&self) -> u32 {
        self.bound().fold(u32::MAX, |acc, (v, b)| {
            let m = crate::formula::VAR_MASKS[v.index()];
            acc & if b { m } else { !m }
        })
    }

    /// Canonical surface tokens, alphabetically sorted.
    pub fn to_tokens(&self) -> Vec<&'static str> {
        self.bound()
            .flat_map(|(v, b)| [v.name(), if b { "1" } else { "0" }])
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens().join(" "))
    }
}

impl FromStr for Assignment {
    type Err = AssignmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Assignment::parse_tokens(&s.split_whitespace().collect::<Vec<_>>())
    }
}
