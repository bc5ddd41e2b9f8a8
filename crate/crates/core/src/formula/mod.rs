//! Propositional formulas over the fixed five-variable vocabulary.
//!
//! Formulas are immutable trees. The surface syntax is Polish (prefix)
//! notation with whitespace-separated tokens, see [`polish`].

mod pattern;
mod polish;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use pattern::PatternId;
pub use polish::{parse_polish, tokenize, ParseError};

/// Number of variables in the vocabulary.
pub const NUM_VARS: usize = 5;

/// One of the propositional variables `a` through `e`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u8);

impl Variable {
    pub const A: Variable = Variable(0);
    pub const B: Variable = Variable(1);
    pub const C: Variable = Variable(2);
    pub const D: Variable = Variable(3);
    pub const E: Variable = Variable(4);

    /// All variables in alphabetical order.
    pub const ALL: [Variable; NUM_VARS] = [Variable::A, Variable::B, Variable::C, Variable::D, Variable::E];

    pub fn from_index(index: usize) -> Option<Variable> {
        (index < NUM_VARS).then_some(Variable(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d", "e"][self.index()]
    }

    pub fn from_name(name: &str) -> Option<Variable> {
        match name {
            "a" => Some(Variable::A),
            "b" => Some(Variable::B),
            "c" => Some(Variable::C),
            "d" => Some(Variable::D),
            "e" => Some(Variable::E),
            _ => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four binary connectives. All of them are commutative.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    And,
    Or,
    Iff,
    Xor,
}

impl Connective {
    pub const ALL: [Connective; 4] = [Connective::And, Connective::Or, Connective::Iff, Connective::Xor];

    pub fn apply(self, lhs: bool, rhs: bool) -> bool {
        match self {
            Connective::And => lhs && rhs,
            Connective::Or => lhs || rhs,
            Connective::Iff => lhs == rhs,
            Connective::Xor => lhs != rhs,
        }
    }

    /// Bitwise version of [`Connective::apply`] over packed truth tables.
    pub fn apply_mask(self, lhs: u32, rhs: u32) -> u32 {
        match self {
            Connective::And => lhs & rhs,
            Connective::Or => lhs | rhs,
            Connective::Iff => !(lhs ^ rhs),
            Connective::Xor => lhs ^ rhs,
        }
    }
}

/// A surface operator: negation or one of the binary connectives.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Not,
    Binary(Connective),
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Not,
        Operator::Binary(Connective::And),
        Operator::Binary(Connective::Or),
        Operator::Binary(Connective::Iff),
        Operator::Binary(Connective::Xor),
    ];

    pub fn arity(self) -> usize {
        match self {
            Operator::Not => 1,
            Operator::Binary(_) => 2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Operator::Not => "!",
            Operator::Binary(Connective::And) => "&",
            Operator::Binary(Connective::Or) => "|",
            Operator::Binary(Connective::Iff) => "<->",
            Operator::Binary(Connective::Xor) => "xor",
        }
    }

    pub fn from_token(token: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|op| op.token() == token)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("variable `{0}` has no value in the world")]
pub struct UnassignedVariable(pub Variable);

/// A propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(Variable),
    Not(Box<Formula>),
    Bin(Connective, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(v: Variable) -> Formula {
        Formula::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Formula {
        Formula::Not(Box::new(child))
    }

    pub fn bin(op: Connective, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(Connective::And, lhs, rhs)
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(Connective::Or, lhs, rhs)
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(Connective::Iff, lhs, rhs)
    }

    pub fn xor(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(Connective::Xor, lhs, rhs)
    }

    /// Negation that cancels an existing outer negation instead of stacking.
    pub fn negate(self) -> Formula {
        match self {
            Formula::Not(inner) => *inner,
            other => Formula::not(other),
        }
    }

    pub fn is_not(&self) -> bool {
        matches!(self, Formula::Not(_))
    }

    pub fn connective(&self) -> Option<Connective> {
        match self {
            Formula::Bin(op, _, _) => Some(*op),
            _ => None,
        }
    }

    /// The first Polish token: the root operator or the variable.
    pub fn head_token(&self) -> &'static str {
        match self {
            Formula::Var(v) => v.name(),
            Formula::Not(_) => Operator::Not.token(),
            Formula::Bin(op, _, _) => Operator::Binary(*op).token(),
        }
    }

    /// Polish-notation tokens, operators before their operands.
    pub fn to_polish(&self) -> Vec<&'static str> {
        let mut out = Vec::with_capacity(self.size());
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<&'static str>) {
        match self {
            Formula::Var(_) => out.push(self.head_token()),
            Formula::Not(c) => {
                out.push(self.head_token());
                c.push_tokens(out);
            }
            Formula::Bin(_, l, r) => {
                out.push(self.head_token());
                l.push_tokens(out);
                r.push_tokens(out);
            }
        }
    }

    /// Evaluates under a complete world indexed by [`Variable::index`].
    pub fn evaluate(&self, world: &[Option<bool>; NUM_VARS]) -> Result<bool, UnassignedVariable> {
        Ok(match self {
            Formula::Var(v) => world[v.index()].ok_or(UnassignedVariable(*v))?,
            Formula::Not(c) => !c.evaluate(world)?,
            Formula::Bin(op, l, r) => op.apply(l.evaluate(world)?, r.evaluate(world)?),
        })
    }

    /// Truth table over all 32 worlds of the vocabulary. Bit `w` is set iff the
    /// formula is true in world `w`, where variable `i` takes bit `i` of `w`.
    pub fn truth_table(&self) -> u32 {
        match self {
            Formula::Var(v) => VAR_MASKS[v.index()],
            Formula::Not(c) => !c.truth_table(),
            Formula::Bin(op, l, r) => op.apply_mask(l.truth_table(), r.truth_table()),
        }
    }

    pub fn vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.visit(&mut |node| {
            if let Formula::Var(v) = node {
                out.insert(*v);
            }
        });
        out
    }

    /// Number of Polish tokens.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(c) => 1 + c.size(),
            Formula::Bin(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(c) => 1 + c.depth(),
            Formula::Bin(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Preorder traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Var(_) => {}
            Formula::Not(c) => c.visit(f),
            Formula::Bin(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
        }
    }

    pub fn contains_double_negation(&self) -> bool {
        let mut found = false;
        self.visit(&mut |node| {
            if let Formula::Not(c) = node {
                found |= c.is_not();
            }
        });
        found
    }

    /// Swaps the children of every binary node for which `decide` returns
    /// true. `decide` is called once per binary node in preorder.
    pub fn flip_children(&self, decide: &mut impl FnMut() -> bool) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(*v),
            Formula::Not(c) => Formula::not(c.flip_children(decide)),
            Formula::Bin(op, l, r) => {
                let swap = decide();
                let l = l.flip_children(decide);
                let r = r.flip_children(decide);
                if swap {
                    Formula::bin(*op, r, l)
                } else {
                    Formula::bin(*op, l, r)
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_polish().join(" "))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polish(&tokenize(s))
    }
}

/// `VAR_MASKS[i]` has bit `w` set iff bit `i` of `w` is set.
pub(crate) const VAR_MASKS: [u32; NUM_VARS] = [0xAAAA_AAAA, 0xCCCC_CCCC, 0xF0F0_F0F0, 0xFF00_FF00, 0xFFFF_0000];

/// Mean left and right subtree sizes of binary nodes.
#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SubtreeStats {
    pub root_left: f64,
    pub root_right: f64,
    pub root_count: usize,
    pub all_left: f64,
    pub all_right: f64,
    pub node_count: usize,
}

impl SubtreeStats {
    /// Relative difference between mean left and right sizes over all nodes.
    pub fn all_node_imbalance(&self) -> f64 {
        let mean = 0.5 * (self.all_left + self.all_right);
        if mean == 0.0 {
            0.0
        } else {
            (self.all_left - self.all_right).abs() / mean
        }
    }
}

pub fn subtree_stats<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> SubtreeStats {
    let (mut root_l, mut root_r, mut root_n) = (0usize, 0usize, 0usize);
    let (mut all_l, mut all_r, mut all_n) = (0usize, 0usize, 0usize);
    for f in formulas {
        if let Formula::Bin(_, l, r) = f {
            root_l += l.size();
            root_r += r.size();
            root_n += 1;
        }
        f.visit(&mut |node| {
            if let Formula::Bin(_, l, r) = node {
                all_l += l.size();
                all_r += r.size();
                all_n += 1;
            }
        });
    }
    let mean = |sum: usize, n: usize| if n == 0 { 0.0 } else { sum as f64 / n as f64 };
    SubtreeStats {
        root_left: mean(root_l, root_n),
        root_right: mean(root_r, root_n),
        root_count: root_n,
        all_left: mean(all_l, all_n),
        all_right: mean(all_r, all_n),
        node_count: all_n,
    }
}
