//! Seeded generation of satisfiable-formula datasets.
//!
//! Trees are grown by recursive budget splitting, which gives exact control
//! over the token count: a budget of one is a variable; larger budgets pick an
//! operator uniformly among those that can still spend the budget without
//! producing a double negation.

mod io;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assignment::Assignment;
use crate::formula::{subtree_stats, Connective, Formula, PatternId, SubtreeStats, Variable};
use crate::sat::{self, SatError};

pub use io::{format_datapoint, parse_datapoint, read_dataset, write_dataset, DatasetIoError};

/// A formula with one satisfying (partial) assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Datapoint {
    pub formula: Formula,
    pub target: Assignment,
}

impl Datapoint {
    /// Attaches the deterministic target chosen by [`sat::pick_target`].
    pub fn with_picked_target(formula: Formula) -> Result<Self, SatError> {
        let target = sat::pick_target(&formula)?;
        Ok(Datapoint { formula, target })
    }

    pub fn is_valid(&self) -> bool {
        !self.formula.contains_double_negation()
            && matches!(sat::satisfies_partial(&self.formula, &self.target), Ok(true))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("length bounds must satisfy 5 <= min_len <= max_len, got {min_len}..={max_len}")]
    BadBounds { min_len: usize, max_len: usize },
    #[error("length profile covers {found} but the bounds are {min_len}..={max_len}")]
    ProfileOutOfBounds {
        found: usize,
        min_len: usize,
        max_len: usize,
    },
    #[error("length profile shares sum to {0}, expected 1")]
    ProfileNotNormalized(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no formula has {0} tokens")]
pub struct BudgetInfeasible(pub usize);

/// Share of the dataset assigned to each formula length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthProfile {
    shares: BTreeMap<usize, f64>,
}

impl LengthProfile {
    pub const LONG_SHARE: f64 = 0.03;
    pub const SHORT_CUTOFF: usize = 8;

    /// Each length `>= 8` gets 3%; the rest is spread evenly over shorter
    /// lengths. When 3% per long length would exceed the total (wide ranges
    /// such as 5..=50), the profile falls back to uniform.
    pub fn standard(min_len: usize, max_len: usize) -> Self {
        let lengths: Vec<usize> = (min_len..=max_len).collect();
        let long: Vec<usize> = lengths.iter().copied().filter(|l| *l >= Self::SHORT_CUTOFF).collect();
        let short: Vec<usize> = lengths.iter().copied().filter(|l| *l < Self::SHORT_CUTOFF).collect();
        let per_long = Self::LONG_SHARE.min(1.0 / lengths.len() as f64);
        let mut shares = BTreeMap::new();
        if short.is_empty() {
            for l in long {
                shares.insert(l, 1.0 / lengths.len() as f64);
            }
        } else {
            let residual = (1.0 - per_long * long.len() as f64) / short.len() as f64;
            for l in long {
                shares.insert(l, per_long);
            }
            for l in short {
                shares.insert(l, residual);
            }
        }
        LengthProfile { shares }
    }

    pub fn from_shares(shares: BTreeMap<usize, f64>) -> Self {
        LengthProfile { shares }
    }

    pub fn share(&self, len: usize) -> f64 {
        self.shares.get(&len).copied().unwrap_or(0.0)
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.shares.keys().copied()
    }

    /// Integer per-length counts summing to `n`, by largest remainder.
    pub fn quotas(&self, n: usize) -> BTreeMap<usize, usize> {
        let mut quotas: BTreeMap<usize, usize> = BTreeMap::new();
        let mut remainders = Vec::with_capacity(self.shares.len());
        for (&len, &share) in &self.shares {
            let exact = share * n as f64;
            quotas.insert(len, exact.floor() as usize);
            remainders.push((exact - exact.floor(), len));
        }
        let assigned: usize = quotas.values().sum();
        // ties go to the shorter length
        remainders.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, len) in remainders.into_iter().take(n.saturating_sub(assigned)) {
            *quotas.get_mut(&len).unwrap() += 1;
        }
        quotas
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub min_len: usize,
    pub max_len: usize,
    pub n_examples: usize,
    pub seed: u64,
    pub length_profile: LengthProfile,
}

impl DatasetSpec {
    pub fn new(min_len: usize, max_len: usize, n_examples: usize, seed: u64) -> Self {
        DatasetSpec {
            min_len,
            max_len,
            n_examples,
            seed,
            length_profile: LengthProfile::standard(min_len, max_len),
        }
    }

    /// The 5..=35 token range of the standard training data.
    pub fn standard(n_examples: usize, seed: u64) -> Self {
        DatasetSpec::new(5, 35, n_examples, seed)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.min_len < 5 || self.min_len > self.max_len {
            return Err(SpecError::BadBounds {
                min_len: self.min_len,
                max_len: self.max_len,
            });
        }
        if let Some(bad) = self
            .length_profile
            .lengths()
            .find(|l| !(self.min_len..=self.max_len).contains(l))
        {
            return Err(SpecError::ProfileOutOfBounds {
                found: bad,
                min_len: self.min_len,
                max_len: self.max_len,
            });
        }
        let total: f64 = self.length_profile.shares.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(SpecError::ProfileNotNormalized(total));
        }
        Ok(())
    }
}

const GEN_CHUNK: usize = 1024;

fn can_fill(budget: usize, under_not: bool) -> bool {
    // budget 2 only fits `! v`, which a negated parent forbids
    budget == 1 || budget >= 3 || (budget == 2 && !under_not)
}

fn grow(budget: usize, under_not: bool, rng: &mut impl Rng) -> Formula {
    if budget == 1 {
        return Formula::Var(Variable::ALL[rng.random_range(0..Variable::ALL.len())]);
    }
    let not_ok = !under_not && can_fill(budget - 1, true);
    let bin_ok = budget >= 3;
    let choices = not_ok as usize + if bin_ok { Connective::ALL.len() } else { 0 };
    debug_assert!(choices > 0, "infeasible budget {budget}");
    let pick = rng.random_range(0..choices);
    if not_ok && pick == 0 {
        return Formula::not(grow(budget - 1, true, rng));
    }
    let op = Connective::ALL[pick - not_ok as usize];
    let left = rng.random_range(1..=budget - 2);
    let lhs = grow(left, false, rng);
    let rhs = grow(budget - 1 - left, false, rng);
    Formula::bin(op, lhs, rhs)
}

/// A random satisfiable formula of exactly `target_len` tokens without double
/// negation. Unsatisfiable draws are rejected and redrawn.
pub fn sample_formula(target_len: usize, rng: &mut impl Rng) -> Result<Formula, BudgetInfeasible> {
    if target_len == 0 {
        return Err(BudgetInfeasible(0));
    }
    loop {
        let f = grow(target_len, false, rng);
        if sat::is_satisfiable(&f) {
            return Ok(f);
        }
    }
}

fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generates `spec.n_examples` datapoints with exact per-length quotas.
///
/// Lengths are shuffled with `spec.seed`, then generated in fixed-size
/// chunks, each with its own RNG stream, so the output is independent of the
/// thread count.
pub fn generate_dataset(spec: &DatasetSpec) -> Result<Vec<Datapoint>, SpecError> {
    spec.validate()?;
    let mut lengths: Vec<usize> = spec
        .length_profile
        .quotas(spec.n_examples)
        .into_iter()
        .flat_map(|(len, count)| std::iter::repeat_n(len, count))
        .collect();
    lengths.shuffle(&mut chunk_rng(spec.seed, 0));

    let chunks: Vec<Vec<Datapoint>> = lengths
        .par_chunks(GEN_CHUNK)
        .enumerate()
        .map(|(i, chunk)| {
            let mut rng = chunk_rng(spec.seed, i as u64 + 1);
            chunk
                .iter()
                .map(|&len| {
                    let formula = sample_formula(len, &mut rng).expect("validated lengths are positive");
                    Datapoint::with_picked_target(formula).expect("sampled formulas are satisfiable")
                })
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Flips each binary node independently with probability one half.
/// Targets are kept: every connective is commutative.
pub fn balance_trees(dataset: &[Datapoint], seed: u64) -> Vec<Datapoint> {
    dataset
        .par_iter()
        .enumerate()
        .map(|(i, dp)| {
            let mut rng = chunk_rng(seed, i as u64);
            Datapoint {
                formula: dp.formula.flip_children(&mut || rng.random_bool(0.5)),
                target: dp.target,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub n: usize,
    pub length_histogram: BTreeMap<usize, usize>,
    pub subtrees: SubtreeStats,
    /// Fraction of datapoints containing each pattern.
    pub pattern_rates: BTreeMap<PatternId, f64>,
    pub mean_world_ratio: f64,
    pub mean_partial_ratio: f64,
    pub double_negations: usize,
}

pub fn dataset_stats(dataset: &[Datapoint]) -> DatasetStats {
    let n = dataset.len();
    let mut length_histogram = BTreeMap::new();
    for dp in dataset {
        *length_histogram.entry(dp.formula.size()).or_insert(0) += 1;
    }
    let frac = |count: usize| if n == 0 { 0.0 } else { count as f64 / n as f64 };
    let pattern_rates = PatternId::ALL
        .into_iter()
        .map(|p| {
            (
                p,
                frac(dataset.iter().filter(|dp| dp.formula.contains_pattern(p)).count()),
            )
        })
        .collect();
    let (world, partial) = dataset
        .par_iter()
        .map(|dp| {
            let d = sat::difficulty(&dp.formula);
            (d.world_ratio, d.partial_ratio)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0), |(w, p), (dw, dp)| (w + dw, p + dp));
    DatasetStats {
        n,
        length_histogram,
        subtrees: subtree_stats(dataset.iter().map(|dp| &dp.formula)),
        pattern_rates,
        mean_world_ratio: if n == 0 { 0.0 } else { world / n as f64 },
        mean_partial_ratio: if n == 0 { 0.0 } else { partial / n as f64 },
        double_negations: dataset
            .iter()
            .filter(|dp| dp.formula.contains_double_negation())
            .count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_lengths_have_one_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(matches!(sample_formula(1, &mut rng).unwrap(), Formula::Var(_)));
            let two = sample_formula(2, &mut rng).unwrap();
            assert!(matches!(&two, Formula::Not(c) if matches!(**c, Formula::Var(_))));
        }
        assert_eq!(sample_formula(0, &mut rng), Err(BudgetInfeasible(0)));
    }

    #[test]
    fn sampled_formulas_meet_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in 1..=50 {
            for _ in 0..20 {
                let f = sample_formula(len, &mut rng).unwrap();
                assert_eq!(f.size(), len);
                assert!(sat::is_satisfiable(&f));
                assert!(!f.contains_double_negation());
            }
        }
    }

    #[test]
    fn standard_profile() {
        let p = LengthProfile::standard(5, 35);
        assert_eq!(p.share(8), 0.03);
        assert_eq!(p.share(35), 0.03);
        assert!((p.share(5) - 0.16 / 3.0).abs() < 1e-12);
        let total: f64 = (5..=35).map(|l| p.share(l)).sum();
        assert!((total - 1.0).abs() < 1e-12);

        let wide = LengthProfile::standard(5, 50);
        assert!((wide.share(8) - 1.0 / 46.0).abs() < 1e-12);
        assert!((wide.share(5) - 1.0 / 46.0).abs() < 1e-12);
    }

    #[test]
    fn quotas_sum_to_n() {
        let p = LengthProfile::standard(5, 35);
        for n in [0, 1, 7, 100, 12345] {
            assert_eq!(p.quotas(n).values().sum::<usize>(), n);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(DatasetSpec::new(4, 35, 1, 0).validate().is_err());
        assert!(DatasetSpec::new(9, 8, 1, 0).validate().is_err());
        let mut spec = DatasetSpec::standard(1, 0);
        spec.length_profile = LengthProfile::from_shares([(40, 1.0)].into());
        assert!(matches!(
            spec.validate(),
            Err(SpecError::ProfileOutOfBounds { found: 40, .. })
        ));
        spec.length_profile = LengthProfile::from_shares([(10, 0.5)].into());
        assert!(matches!(spec.validate(), Err(SpecError::ProfileNotNormalized(_))));
    }

    #[test]
    fn single_example() {
        let ds = generate_dataset(&DatasetSpec::standard(1, 3)).unwrap();
        assert_eq!(ds.len(), 1);
        assert!(ds[0].is_valid());
    }

    #[test]
    fn length_shares_and_determinism() {
        let spec = DatasetSpec::standard(5000, 11);
        let ds = generate_dataset(&spec).unwrap();
        assert_eq!(ds, generate_dataset(&spec).unwrap());
        let stats = dataset_stats(&ds);
        for len in 8..=35 {
            let share = stats.length_histogram[&len] as f64 / ds.len() as f64;
            assert!((share - 0.03).abs() <= 0.005, "length {len}: {share}");
        }
        assert!(ds.iter().all(Datapoint::is_valid));
        assert_eq!(stats.double_negations, 0);
    }

    #[test]
    fn prop50_style_range() {
        let ds = generate_dataset(&DatasetSpec::new(5, 50, 460, 2)).unwrap();
        let max = ds.iter().map(|dp| dp.formula.size()).max().unwrap();
        assert_eq!(max, 50);
    }

    #[test]
    fn balance_keeps_targets_and_is_deterministic() {
        let ds = generate_dataset(&DatasetSpec::standard(500, 5)).unwrap();
        let a = balance_trees(&ds, 9);
        assert_eq!(a, balance_trees(&ds, 9));
        for (before, after) in ds.iter().zip(&a) {
            assert_eq!(before.target, after.target);
            assert_eq!(before.formula.truth_table(), after.formula.truth_table());
            assert!(after.is_valid());
        }
    }

    #[test]
    fn stats_of_single_formula() {
        let dp = Datapoint::with_picked_target("! & a b".parse().unwrap()).unwrap();
        let s = dataset_stats(&[dp]);
        assert_eq!(s.pattern_rates[&PatternId::P1], 1.0);
        assert_eq!(s.pattern_rates[&PatternId::P2], 0.0);
        assert_eq!(s.mean_world_ratio, 0.75);
    }
}
