use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Connective, Formula, Variable};

/// A held-out parent–child pattern.
///
/// | id | surface     | predicate                                   |
/// |----|-------------|---------------------------------------------|
/// | P1 | `! &`       | negation over an AND node                   |
/// | P2 | `! \|`      | negation over an OR node                    |
/// | P3 | `! xor`     | negation over an XOR node                   |
/// | P4 | `! b`       | negation over the variable `b`              |
/// | P5 | `& !`       | AND node whose *left* child is a negation   |
/// | P6 | `& xor`     | AND node with an XOR child on either side   |
/// | P7 | `<-> !`     | IFF node with a negated child on either side|
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

impl PatternId {
    pub const ALL: [PatternId; 7] = [
        PatternId::P1,
        PatternId::P2,
        PatternId::P3,
        PatternId::P4,
        PatternId::P5,
        PatternId::P6,
        PatternId::P7,
    ];

    pub fn description(self) -> &'static str {
        match self {
            PatternId::P1 => "! &",
            PatternId::P2 => "! |",
            PatternId::P3 => "! xor",
            PatternId::P4 => "! b",
            PatternId::P5 => "& !",
            PatternId::P6 => "& xor",
            PatternId::P7 => "<-> !",
        }
    }

    /// Number of parent–child pairs rooted at `node` that match.
    fn matches_at(self, node: &Formula) -> usize {
        use Formula::*;
        match (self, node) {
            (PatternId::P1, Not(c)) => (c.connective() == Some(Connective::And)) as usize,
            (PatternId::P2, Not(c)) => (c.connective() == Some(Connective::Or)) as usize,
            (PatternId::P3, Not(c)) => (c.connective() == Some(Connective::Xor)) as usize,
            (PatternId::P4, Not(c)) => matches!(**c, Var(Variable::B)) as usize,
            (PatternId::P5, Bin(Connective::And, l, _)) => l.is_not() as usize,
            (PatternId::P6, Bin(Connective::And, l, r)) => {
                let is_xor = |f: &Formula| f.connective() == Some(Connective::Xor);
                is_xor(l) as usize + is_xor(r) as usize
            }
            (PatternId::P7, Bin(Connective::Iff, l, r)) => l.is_not() as usize + r.is_not() as usize,
            _ => 0,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", *self as u8 + 1)
    }
}

impl FromStr for PatternId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix(['P', 'p']).unwrap_or(s);
        match digits.parse::<usize>() {
            Ok(n @ 1..=7) => Ok(PatternId::ALL[n - 1]),
            _ => Err(format!("unknown pattern `{s}`, expected P1..P7")),
        }
    }
}

impl Formula {
    pub fn count_pattern(&self, pattern: PatternId) -> usize {
        let mut n = 0;
        self.visit(&mut |node| n += pattern.matches_at(node));
        n
    }

    pub fn contains_pattern(&self, pattern: PatternId) -> bool {
        let mut found = false;
        self.visit(&mut |node| found |= pattern.matches_at(node) > 0);
        found
    }

    /// All patterns this formula contains, in id order.
    pub fn patterns(&self) -> Vec<PatternId> {
        PatternId::ALL
            .into_iter()
            .filter(|p| self.contains_pattern(*p))
            .collect()
    }
}
