//! Datasets, held-out-pattern splits and exact semantic scoring for the
//! satisfying-assignment task over small propositional formulas.
//!
//! The crate is organised bottom-up:
//!
//! - [`formula`]: AST, Polish codec, pattern predicates, structural metrics
//! - [`assignment`] and [`sat`]: partial assignments and brute-force semantics
//! - [`dataset`]: seeded generation, tree balancing, statistics, file I/O
//! - [`split`]: pattern-free training sets via rewriting or removal
//! - [`template`]: the templated diagnostic test set and behaviour pairs
//! - [`eval`]: scoring prediction files and producing reports
//! - [`annotate`]: tree paths and adjacency lists for structure-aware encoders

pub mod annotate;
pub mod assignment;
pub mod dataset;
pub mod eval;
pub mod formula;
pub mod sat;
pub mod split;
pub mod template;

pub use assignment::Assignment;
pub use dataset::Datapoint;
pub use formula::{Connective, Formula, Operator, PatternId, Variable};
