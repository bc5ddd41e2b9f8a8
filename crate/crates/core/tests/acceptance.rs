//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.
//!
//! cargo test --release --test acceptance

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proplab::dataset::{balance_trees, dataset_stats, generate_dataset, sample_formula, DatasetSpec};
use proplab::eval::{classify_behavior, score, semantic_score, BehaviorClass, PredictionRecord, Score};
use proplab::sat::{is_satisfiable, pick_target, random_guess_accuracy, satisfies_partial};
use proplab::split::{make_split, rewrite_eliminate, verify_absent, SplitMethod, SplitSpec};
use proplab::template::{drop_probed_negations, generate_templated_set, instantiate, BehaviorPair};
use proplab::{Assignment, Datapoint, Formula, PatternId, Variable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REWRITE_FORMULAS_PER_PATTERN: usize = 10_000;
const REWRITE_TIME_LIMIT: Duration = Duration::from_secs(120);
const BALANCE_DATAPOINTS: usize = 100_000;
const BALANCE_MAX_IMBALANCE: f64 = 0.02;
const DIFFICULTY_FORMULAS: usize = 20_000;
const WORLD_RATIO: (f64, f64) = (0.50, 0.07);
const PARTIAL_RATIO: (f64, f64) = (0.29, 0.07);
const TEMPLATED_COUNT: (usize, usize) = (7_000, 9_500);
const BASELINE: (f64, f64) = (0.26, 0.03);
const SPLIT_DATAPOINTS: usize = 20_000;
const PROPERTY_CASES: usize = 10_000;

struct Gate {
    failures: usize,
}

impl Gate {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn within(x: f64, (centre, tol): (f64, f64)) -> bool {
    (x - centre).abs() <= tol
}

/// World set by direct evaluation over all 32 vocabulary worlds.
fn worlds(f: &Formula) -> u32 {
    (0..32u32).fold(0, |acc, w| {
        let world = std::array::from_fn(|i| Some(w >> i & 1 == 1));
        acc | (f.evaluate(&world).unwrap() as u32) << w
    })
}

fn random_formula(rng: &mut ChaCha8Rng) -> Formula {
    let len = rng.random_range(1..=40);
    sample_formula(len, rng).unwrap()
}

fn random_partial(f: &Formula, rng: &mut ChaCha8Rng) -> Assignment {
    let mut a = Assignment::new();
    for v in f.vars() {
        match rng.random_range(0..3) {
            0 => {}
            k => a.set(v, k == 2),
        }
    }
    a
}

fn rewrite_soundness(gate: &mut Gate) {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for (k, p) in [PatternId::P1, PatternId::P2, PatternId::P3, PatternId::P5]
        .into_iter()
        .enumerate()
    {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
        let (mut seen, mut drawn, mut bad) = (0, 0, 0);
        while seen < REWRITE_FORMULAS_PER_PATTERN {
            let f = random_formula(&mut rng);
            drawn += 1;
            if !is_satisfiable(&f) || !f.contains_pattern(p) {
                continue;
            }
            seen += 1;
            let g = rewrite_eliminate(&f, p);
            if worlds(&g) != worlds(&f) || g.count_pattern(p) != 0 || g.contains_double_negation() {
                bad += 1;
            }
        }
        ok &= bad == 0;
        detail.push(format!("{p} {bad}/{seen} bad ({drawn} drawn)"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed <= REWRITE_TIME_LIMIT;
    gate.check(
        "rewrite soundness",
        ok,
        format!("{} in {:.1}s", detail.join(", "), elapsed.as_secs_f64()),
    );
}

fn reference_scoring(gate: &mut Gate) {
    let dp = Datapoint {
        formula: "& ! a | b c".parse().unwrap(),
        target: "a 0 b 1".parse().unwrap(),
    };
    let rows = [
        ("a 1 b 0", Score::Incorrect),
        ("a 0 b 0 c 1", Score::Semantic),
        ("a 0 c 1", Score::Semantic),
        ("a 0 b 1", Score::Syntactic),
    ];
    let got: Vec<Score> = rows
        .iter()
        .map(|(p, _)| score(&dp, &PredictionRecord::from_line(0, p)))
        .collect();
    let ok = rows.iter().zip(&got).all(|((_, want), got)| want == got);
    gate.check("reference scoring", ok, format!("{got:?}"));
}

/// Puts the larger child on the left at every binary node.
fn left_heavy(f: &Formula) -> Formula {
    match f {
        Formula::Var(v) => Formula::Var(*v),
        Formula::Not(c) => Formula::not(left_heavy(c)),
        Formula::Bin(op, l, r) => {
            let (l, r) = (left_heavy(l), left_heavy(r));
            if l.size() >= r.size() {
                Formula::bin(*op, l, r)
            } else {
                Formula::bin(*op, r, l)
            }
        }
    }
}

fn balance(gate: &mut Gate) {
    let ds = generate_dataset(&DatasetSpec::standard(BALANCE_DATAPOINTS, 2024)).unwrap();
    let before = dataset_stats(&ds).subtrees;
    let balanced = balance_trees(&ds, 2024);
    let after = dataset_stats(&balanced).subtrees;
    let valid = balanced.iter().filter(|dp| dp.is_valid()).count();

    let skewed: Vec<Datapoint> = ds
        .iter()
        .map(|dp| Datapoint {
            formula: left_heavy(&dp.formula),
            target: dp.target,
        })
        .collect();
    let skewed_after = proplab::formula::subtree_stats(balance_trees(&skewed, 7).iter().map(|dp| &dp.formula));

    let ok = after.all_node_imbalance() < BALANCE_MAX_IMBALANCE
        && skewed_after.all_node_imbalance() < BALANCE_MAX_IMBALANCE
        && valid == balanced.len();
    gate.check(
        "balance",
        ok,
        format!(
            "all-node left/right {:.3}/{:.3} -> {:.3}/{:.3} (imbalance {:.4}), \
             left-heavy input -> imbalance {:.4}, {valid}/{} targets valid",
            before.all_left,
            before.all_right,
            after.all_left,
            after.all_right,
            after.all_node_imbalance(),
            skewed_after.all_node_imbalance(),
            balanced.len()
        ),
    );
}

fn difficulty_stats(gate: &mut Gate) {
    let ds = generate_dataset(&DatasetSpec::standard(DIFFICULTY_FORMULAS, 31)).unwrap();
    let s = dataset_stats(&ds);
    gate.check(
        "difficulty statistics",
        within(s.mean_world_ratio, WORLD_RATIO) && within(s.mean_partial_ratio, PARTIAL_RATIO),
        format!(
            "world {:.4} (want {}±{}), partial {:.4} (want {}±{})",
            s.mean_world_ratio, WORLD_RATIO.0, WORLD_RATIO.1, s.mean_partial_ratio, PARTIAL_RATIO.0, PARTIAL_RATIO.1
        ),
    );
}

fn templated(gate: &mut Gate) -> Vec<Formula> {
    let first = generate_templated_set();
    let second = generate_templated_set();
    let deterministic = first == second;
    let n = first.len();
    let clean = first
        .iter()
        .all(|i| is_satisfiable(&i.formula) && !i.formula.contains_double_negation());
    let unique = first
        .iter()
        .map(|i| i.formula.to_string())
        .collect::<BTreeSet<_>>()
        .len()
        == n;
    let t14_vii = instantiate(14, 7).len();
    let ok = deterministic && clean && unique && (TEMPLATED_COUNT.0..=TEMPLATED_COUNT.1).contains(&n) && t14_vii == 36;
    gate.check(
        "templated set",
        ok,
        format!(
            "{n} formulas (want {}..={}), deterministic {deterministic}, satisfiable and free of double negation {clean}, \
             unique {unique}, template 14 schema vii {t14_vii}",
            TEMPLATED_COUNT.0, TEMPLATED_COUNT.1
        ),
    );
    first.into_iter().map(|i| i.formula).collect()
}

fn baseline(gate: &mut Gate, formulas: &[Formula]) {
    let acc = random_guess_accuracy(formulas);
    gate.check(
        "random-guess baseline",
        within(acc, BASELINE),
        format!("{acc:.4} (want {}±{})", BASELINE.0, BASELINE.1),
    );
}

fn split_absence(gate: &mut Gate) {
    let ds = generate_dataset(&DatasetSpec::standard(SPLIT_DATAPOINTS, 5)).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for spec in SplitSpec::all() {
        let split = make_split(&ds, spec);
        let report = verify_absent(&split, spec.pattern);
        let count_ok = spec.method == SplitMethod::Remove || split.len() == ds.len();
        let targets_ok = split.iter().all(Datapoint::is_valid);
        ok &= report.is_clean() && count_ok && targets_ok;
        detail.push(format!(
            "{} {}/{} left {}",
            spec.pattern,
            split.len(),
            ds.len(),
            report.occurrences
        ));
    }
    gate.check("split absence", ok, detail.join(", "));
}

fn property_loops(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut round_trip, mut monotone, mut flip, mut partition, mut syn_sem) = (0, 0, 0, 0, 0);
    for _ in 0..PROPERTY_CASES {
        let f = random_formula(&mut rng);

        round_trip += (f.to_string().parse::<Formula>().as_ref() == Ok(&f)) as usize;

        let g = f.flip_children(&mut || rng.random_bool(0.5));
        flip += (worlds(&g) == worlds(&f)) as usize;

        let a = random_partial(&f, &mut rng);
        let free: Vec<Variable> = f.vars().into_iter().filter(|v| a.get(*v).is_none()).collect();
        let holds = a.is_empty() || !satisfies_partial(&f, &a).unwrap() || {
            let mut b = a;
            for v in free {
                if rng.random_bool(0.5) {
                    b.set(v, rng.random_bool(0.5));
                }
            }
            satisfies_partial(&f, &b).unwrap()
        };
        monotone += holds as usize;

        let p = [PatternId::P1, PatternId::P2, PatternId::P3][rng.random_range(0..3)];
        let pair = BehaviorPair {
            pattern: p,
            original: f.clone(),
            modified: drop_probed_negations(&f, p),
        };
        let o = random_partial(&f, &mut rng).to_tokens();
        let m = if rng.random_bool(0.3) {
            o.clone()
        } else {
            random_partial(&f, &mut rng).to_tokens()
        };
        let memberships = [
            semantic_score(&pair.original, &o).is_semantically_correct(),
            o == m,
            semantic_score(&pair.modified, &o).is_semantically_correct(),
        ];
        let expected = match memberships {
            [true, _, _] => BehaviorClass::A,
            [false, true, _] => BehaviorClass::B,
            [false, false, true] => BehaviorClass::C,
            _ => BehaviorClass::D,
        };
        partition += (classify_behavior(&pair, &o, &m) == expected) as usize;

        let ok = match pick_target(&f) {
            Ok(t) => {
                let dp = Datapoint {
                    formula: f.clone(),
                    target: t,
                };
                let exact = PredictionRecord::from_raw(0, &t.to_tokens());
                let other = PredictionRecord::from_raw(0, &random_partial(&f, &mut rng).to_tokens());
                score(&dp, &exact) == Score::Syntactic
                    && [exact, other].iter().all(|pred| {
                        score(&dp, pred) != Score::Syntactic
                            || satisfies_partial(&f, &Assignment::parse_tokens(&pred.tokens).unwrap()).unwrap()
                    })
            }
            Err(_) => !is_satisfiable(&f),
        };
        syn_sem += ok as usize;
    }
    let n = PROPERTY_CASES;
    let counts = [
        ("round-trip", round_trip),
        ("monotonicity", monotone),
        ("flip invariance", flip),
        ("behaviour partition", partition),
        ("syntactic implies semantic", syn_sem),
    ];
    let ok = counts.iter().all(|(_, c)| *c == n);
    let detail: Vec<String> = counts.iter().map(|(name, c)| format!("{name} {c}/{n}")).collect();
    gate.check("property loops", ok, detail.join(", "));
}

fn main() {
    let mut gate = Gate { failures: 0 };
    rewrite_soundness(&mut gate);
    reference_scoring(&mut gate);
    balance(&mut gate);
    difficulty_stats(&mut gate);
    let formulas = templated(&mut gate);
    baseline(&mut gate, &formulas);
    split_absence(&mut gate);
    property_loops(&mut gate);
    if gate.failures > 0 {
        println!("{} acceptance criteria failed", gate.failures);
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
