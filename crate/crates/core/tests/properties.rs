use proplab::dataset::{balance_trees, Datapoint};
use proplab::eval::{classify_behavior, score, semantic_score, PredictionRecord, Score};
use proplab::formula::parse_polish;
use proplab::sat::{difficulty, enumerate_models, is_satisfiable, pick_target, satisfies_partial};
use proplab::split::rewrite_eliminate;
use proplab::template::{drop_probed_negations, BehaviorPair};
use proplab::{Assignment, Connective, Formula, PatternId, Variable};
use proptest::prelude::*;

fn variable() -> impl Strategy<Value = Variable> {
    (0usize..5).prop_map(|i| Variable::from_index(i).unwrap())
}

fn formula() -> impl Strategy<Value = Formula> {
    variable().prop_map(Formula::Var).prop_recursive(6, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (0usize..4, inner.clone(), inner).prop_map(|(c, l, r)| Formula::bin(Connective::ALL[c], l, r)),
        ]
    })
}

fn satisfiable_formula() -> impl Strategy<Value = Formula> {
    formula().prop_filter("satisfiable", is_satisfiable)
}

fn partial() -> impl Strategy<Value = Assignment> {
    proptest::collection::vec(prop_oneof![Just(None::<bool>), Just(Some(false)), Just(Some(true))], 5).prop_map(
        |vals| {
            let mut a = Assignment::new();
            for (i, v) in vals.into_iter().enumerate() {
                if let Some(b) = v {
                    a.set(Variable::from_index(i).unwrap(), b);
                }
            }
            a
        },
    )
}

/// Restricts `a` to the variables of `f` so satisfaction is defined.
fn restrict(a: Assignment, f: &Formula) -> Assignment {
    let vars = f.vars();
    Assignment::from_pairs(a.bound().filter(|(v, _)| vars.contains(v))).unwrap()
}

/// Worlds over the full vocabulary, computed by evaluation only.
fn world_set(f: &Formula) -> Vec<bool> {
    (0..32u32)
        .map(|w| {
            let world = std::array::from_fn(|i| Some(w >> i & 1 == 1));
            f.evaluate(&world).unwrap()
        })
        .collect()
}

fn collapse_double_negations(f: &Formula) -> Formula {
    match f {
        Formula::Var(v) => Formula::Var(*v),
        Formula::Not(c) => collapse_double_negations(c).negate(),
        Formula::Bin(op, l, r) => Formula::bin(*op, collapse_double_negations(l), collapse_double_negations(r)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polish_round_trip(f in formula()) {
        let tokens = f.to_polish();
        prop_assert_eq!(parse_polish(&tokens).unwrap(), f.clone());
        prop_assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
    }

    #[test]
    fn size_counts_tokens(f in formula()) {
        prop_assert_eq!(f.size(), f.to_polish().len());
        let child_sizes = match &f {
            Formula::Var(_) => 0,
            Formula::Not(c) => c.size(),
            Formula::Bin(_, l, r) => l.size() + r.size(),
        };
        prop_assert_eq!(f.size(), 1 + child_sizes);
    }

    #[test]
    fn truncated_input_fails(f in formula()) {
        let tokens = f.to_polish();
        prop_assert!(parse_polish(&tokens[..tokens.len() - 1]).is_err());
    }

    #[test]
    fn truth_table_agrees_with_evaluation(f in formula()) {
        let tt = f.truth_table();
        for (w, sat) in world_set(&f).into_iter().enumerate() {
            prop_assert_eq!(tt >> w & 1 == 1, sat);
        }
    }

    #[test]
    fn extending_a_satisfying_partial_keeps_it_satisfying(
        f in satisfiable_formula(), pick in any::<usize>(), bits in any::<u8>()
    ) {
        let t = pick_target(&f).unwrap();
        let free: Vec<Variable> = f.vars().into_iter().filter(|v| t.get(*v).is_none()).collect();
        let mut a = t;
        for (k, v) in free.iter().enumerate() {
            if pick >> k & 1 == 1 {
                a.set(*v, bits >> k & 1 == 1);
            }
        }
        prop_assert!(satisfies_partial(&f, &a).unwrap());
    }

    #[test]
    fn unsatisfying_partials_stay_unsatisfying_when_shrunk(f in formula(), a in partial()) {
        let a = restrict(a, &f);
        if a.len() < 2 {
            return Ok(());
        }
        if !satisfies_partial(&f, &a).unwrap() {
            let v = a.variables().next().unwrap();
            let mut smaller = a;
            smaller.unset(v);
            prop_assert!(!satisfies_partial(&f, &smaller).unwrap());
        }
    }

    #[test]
    fn models_are_exactly_the_satisfying_worlds(f in formula()) {
        let models = enumerate_models(&f);
        let d = difficulty(&f);
        prop_assert_eq!(models.len(), d.models);
        prop_assert!(models.windows(2).all(|w| w[0] < w[1]));
        for m in &models {
            prop_assert!(satisfies_partial(&f, m).unwrap());
            prop_assert_eq!(m.len(), f.vars().len());
        }
        prop_assert!(d.world_ratio >= 0.0 && d.world_ratio <= 1.0);
        prop_assert!(d.partial_ratio >= 0.0 && d.partial_ratio <= 1.0);
    }

    #[test]
    fn picked_target_is_a_minimal_valid_partial(f in satisfiable_formula()) {
        let t = pick_target(&f).unwrap();
        prop_assert!(!t.is_empty());
        prop_assert!(satisfies_partial(&f, &t).unwrap());
        prop_assert!(t.variables().all(|v| f.vars().contains(&v)));
        prop_assert_eq!(t.to_tokens().join(" ").parse::<Assignment>().unwrap(), t);
    }

    #[test]
    fn unsatisfiable_formulas_have_no_target(f in formula()) {
        prop_assert_eq!(pick_target(&f).is_ok(), is_satisfiable(&f));
    }

    #[test]
    fn flipping_children_keeps_the_world_set(f in formula(), bits in proptest::collection::vec(any::<bool>(), 64)) {
        let mut it = bits.into_iter().cycle();
        let g = f.flip_children(&mut || it.next().unwrap());
        prop_assert_eq!(world_set(&g), world_set(&f));
        prop_assert_eq!(g.size(), f.size());
        prop_assert_eq!(g.depth(), f.depth());
    }

    #[test]
    fn balancing_keeps_targets_valid(fs in proptest::collection::vec(satisfiable_formula(), 1..20), seed in any::<u64>()) {
        let ds: Vec<Datapoint> = fs.into_iter().map(|f| Datapoint::with_picked_target(f).unwrap()).collect();
        let balanced = balance_trees(&ds, seed);
        prop_assert_eq!(balanced.len(), ds.len());
        for (b, d) in balanced.iter().zip(&ds) {
            prop_assert_eq!(b.target, d.target);
            prop_assert!(satisfies_partial(&b.formula, &b.target).unwrap());
            prop_assert_eq!(b.formula.contains_double_negation(), d.formula.contains_double_negation());
        }
    }

    #[test]
    fn rewrites_are_sound_and_complete(f in formula(), k in 0usize..4) {
        let p = [PatternId::P1, PatternId::P2, PatternId::P3, PatternId::P5][k];
        let g = rewrite_eliminate(&f, p);
        prop_assert_eq!(g.truth_table(), f.truth_table());
        prop_assert_eq!(g.count_pattern(p), 0);
        prop_assert!(!g.contains_double_negation());
        prop_assert_eq!(rewrite_eliminate(&g, p), g.clone());
    }

    #[test]
    fn rewriting_pattern_free_formulas_only_collapses_negations(f in formula(), k in 0usize..4) {
        let p = [PatternId::P1, PatternId::P2, PatternId::P3, PatternId::P5][k];
        let f = collapse_double_negations(&f);
        prop_assume!(!f.contains_pattern(p));
        prop_assert_eq!(rewrite_eliminate(&f, p), f);
    }

    #[test]
    fn exact_copy_of_target_scores_syntactic(f in satisfiable_formula()) {
        let dp = Datapoint::with_picked_target(f).unwrap();
        let pred = PredictionRecord::from_raw(0, &dp.target.to_tokens());
        prop_assert_eq!(score(&dp, &pred), Score::Syntactic);
    }

    #[test]
    fn syntactic_implies_semantic(f in satisfiable_formula(), a in partial()) {
        let dp = Datapoint::with_picked_target(f).unwrap();
        let pred = PredictionRecord::from_raw(0, &a.to_tokens());
        let s = score(&dp, &pred);
        if s == Score::Syntactic {
            prop_assert!(satisfies_partial(&dp.formula, &a).unwrap());
        }
        if s.is_semantically_correct() {
            prop_assert!(semantic_score(&dp.formula, &pred.tokens).is_semantically_correct());
        }
    }

    #[test]
    fn semantic_score_matches_the_oracle(f in formula(), a in partial()) {
        let tokens = a.to_tokens();
        let s = semantic_score(&f, &tokens);
        let foreign = a.variables().any(|v| !f.vars().contains(&v));
        let expected = if a.is_empty() {
            Score::Malformed
        } else if foreign || !satisfies_partial(&f, &a).unwrap() {
            Score::Incorrect
        } else {
            Score::Semantic
        };
        prop_assert_eq!(s, expected);
    }

    #[test]
    fn behavior_classes_partition(
        f in formula(), k in 0usize..3, o in partial(), m in partial(), same in any::<bool>()
    ) {
        let p = [PatternId::P1, PatternId::P2, PatternId::P3][k];
        let pair = BehaviorPair { pattern: p, original: f.clone(), modified: drop_probed_negations(&f, p) };
        let o = o.to_tokens();
        let m = if same { o.clone() } else { m.to_tokens() };
        let class = classify_behavior(&pair, &o, &m);
        let a = semantic_score(&pair.original, &o).is_semantically_correct();
        let b = !a && o == m;
        let c = !a && !b && semantic_score(&pair.modified, &o).is_semantically_correct();
        let expected = [a, b, c, !a && !b && !c];
        prop_assert_eq!(expected.iter().filter(|x| **x).count(), 1);
        prop_assert_eq!(class as usize, expected.iter().position(|x| *x).unwrap());
    }
}
