//! The templated diagnostic test set.
//!
//! Seventeen context templates with a subformula slot `E` are crossed with
//! thirteen subformula schemas over slots `A` and `B`. Lower-case variables in
//! the templates (always `e`) are literal, not slots.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::Datapoint;
use crate::formula::{parse_polish, tokenize, Connective, Formula, PatternId};
use crate::sat;

pub const TEMPLATES: [&str; 17] = [
    "E",
    "& E e",
    "& ! e E",
    "<-> E e",
    "| E & e ! e",
    "xor e E",
    "<-> E e",
    "! xor E e",
    "! xor ! e E",
    "! & ! e E",
    "! & e E",
    "! | E e",
    "! | ! e E",
    "& ! E e",
    "& e xor E e",
    "& xor E ! e e",
    "<-> ! E e",
];

pub const SUBFORMULAS: [&str; 13] = [
    "! xor A B",
    "! <-> A B",
    "! | A B",
    "! & A B",
    "xor A B",
    "<-> A B",
    "| A B",
    "& ! A B",
    "& ! A ! B",
    "& xor A B c",
    "& c xor A B",
    "<-> ! B A",
    "<-> A ! B",
];

pub const A_CHOICES: [&str; 6] = ["a", "e", "! e", "& a e", "! & a e", "| ! e ! a"];
pub const B_CHOICES: [&str; 6] = ["b", "c", "! c", "& c d", "xor b c", "<-> c b"];

const ROMAN: [&str; 13] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii",
];

/// Roman numeral label of a one-based subformula id.
pub fn subformula_label(id: u8) -> &'static str {
    ROMAN[id as usize - 1]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateInstance {
    /// One-based template number.
    pub template_id: u8,
    /// One-based subformula schema number.
    pub subformula_id: u8,
    pub a_choice: u8,
    pub b_choice: u8,
    /// True for the copy with each `! ψ X Y` moved to `ψ ! X Y`.
    pub moved_negation: bool,
    #[serde(with = "polish_string")]
    pub formula: Formula,
    pub tags: Vec<PatternId>,
}

mod polish_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::formula::Formula;

    pub fn serialize<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn substitute(pattern: &str, slot: &str, with: &str) -> String {
    pattern
        .split_whitespace()
        .map(|t| if t == slot { with } else { t })
        .collect::<Vec<_>>()
        .join(" ")
}

/// All 36 instantiations of one template/schema pair, before any filtering.
/// Ids are one-based.
pub fn instantiate(template_id: u8, subformula_id: u8) -> Vec<(u8, u8, Formula)> {
    let template = TEMPLATES[template_id as usize - 1];
    let schema = SUBFORMULAS[subformula_id as usize - 1];
    let mut out = Vec::with_capacity(A_CHOICES.len() * B_CHOICES.len());
    for (ai, a) in A_CHOICES.iter().enumerate() {
        for (bi, b) in B_CHOICES.iter().enumerate() {
            let sub = substitute(&substitute(schema, "A", a), "B", b);
            let text = substitute(template, "E", &sub);
            let formula = parse_polish(&tokenize(&text)).expect("templates are well formed");
            out.push((ai as u8, bi as u8, formula));
        }
    }
    out
}

fn is_negatable_connective(op: Connective) -> bool {
    matches!(op, Connective::And | Connective::Or | Connective::Xor)
}

/// True iff some `! ψ` occurs with ψ one of AND, OR, XOR.
pub fn has_negated_connective(f: &Formula) -> bool {
    let mut found = false;
    f.visit(&mut |node| {
        if let Formula::Not(c) = node {
            found |= c.connective().is_some_and(is_negatable_connective);
        }
    });
    found
}

/// Replaces every `! ψ X Y` by `ψ ! X Y`, simultaneously.
pub fn move_negation_inward(f: &Formula) -> Formula {
    match f {
        Formula::Var(v) => Formula::Var(*v),
        Formula::Not(c) => match &**c {
            Formula::Bin(op, x, y) if is_negatable_connective(*op) => {
                Formula::bin(*op, Formula::not(move_negation_inward(x)), move_negation_inward(y))
            }
            other => Formula::not(move_negation_inward(other)),
        },
        Formula::Bin(op, l, r) => Formula::bin(*op, move_negation_inward(l), move_negation_inward(r)),
    }
}

/// Generates the full templated set in template/schema/A/B order.
///
/// Each instance containing a negated AND, OR or XOR is followed by its
/// moved-negation copy. Formulas with a double negation or no model are
/// dropped, then exact token-sequence duplicates (first occurrence kept).
pub fn generate_templated_set() -> Vec<TemplateInstance> {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for t in 1..=TEMPLATES.len() as u8 {
        for s in 1..=SUBFORMULAS.len() as u8 {
            for (a, b, formula) in instantiate(t, s) {
                let variant = has_negated_connective(&formula).then(|| move_negation_inward(&formula));
                let candidates = std::iter::once((false, formula)).chain(variant.map(|v| (true, v)));
                for (moved, f) in candidates {
                    if f.contains_double_negation() || !sat::is_satisfiable(&f) {
                        continue;
                    }
                    if !seen.insert(f.to_string()) {
                        continue;
                    }
                    out.push(TemplateInstance {
                        template_id: t,
                        subformula_id: s,
                        a_choice: a,
                        b_choice: b,
                        moved_negation: moved,
                        tags: f.patterns(),
                        formula: f,
                    });
                }
            }
        }
    }
    out
}

pub fn to_datapoints(instances: &[TemplateInstance]) -> Vec<Datapoint> {
    instances
        .iter()
        .map(|i| Datapoint::with_picked_target(i.formula.clone()).expect("instances are satisfiable"))
        .collect()
}

/// One JSON object per line, in instance order.
pub fn write_metadata(path: impl AsRef<Path>, instances: &[TemplateInstance]) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        index: usize,
        template_id: u8,
        subformula_id: &'static str,
        a_choice: &'static str,
        b_choice: &'static str,
        moved_negation: bool,
        formula: String,
        tags: &'a [PatternId],
    }
    let mut w = BufWriter::new(File::create(path)?);
    for (index, inst) in instances.iter().enumerate() {
        let row = Row {
            index,
            template_id: inst.template_id,
            subformula_id: subformula_label(inst.subformula_id),
            a_choice: A_CHOICES[inst.a_choice as usize],
            b_choice: B_CHOICES[inst.b_choice as usize],
            moved_negation: inst.moved_negation,
            formula: inst.formula.to_string(),
            tags: &inst.tags,
        };
        serde_json::to_writer(&mut w, &row)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// A formula containing a probed negated connective, and the same formula
/// with those negations deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorPair {
    pub pattern: PatternId,
    pub original: Formula,
    pub modified: Formula,
}

fn probed_connective(p: PatternId) -> Option<Connective> {
    match p {
        PatternId::P1 => Some(Connective::And),
        PatternId::P2 => Some(Connective::Or),
        PatternId::P3 => Some(Connective::Xor),
        _ => None,
    }
}

/// Deletes the negation of every `! ψ` occurrence for the probed ψ.
pub fn drop_probed_negations(f: &Formula, p: PatternId) -> Formula {
    let probed = probed_connective(p);
    fn go(f: &Formula, probed: Option<Connective>) -> Formula {
        match f {
            Formula::Var(v) => Formula::Var(*v),
            Formula::Not(c) if probed.is_some() && c.connective() == probed => go(c, probed),
            Formula::Not(c) => Formula::not(go(c, probed)),
            Formula::Bin(op, l, r) => Formula::bin(*op, go(l, probed), go(r, probed)),
        }
    }
    go(f, probed)
}

/// One pair per formula containing `p` whose modified form is satisfiable.
/// Only P1, P2 and P3 have a probed negation; other patterns yield nothing.
pub fn make_behavior_pairs<'a>(formulas: impl IntoIterator<Item = &'a Formula>, p: PatternId) -> Vec<BehaviorPair> {
    if probed_connective(p).is_none() {
        return Vec::new();
    }
    formulas
        .into_iter()
        .filter(|f| f.contains_pattern(p))
        .filter_map(|f| {
            let modified = drop_probed_negations(f, p);
            sat::is_satisfiable(&modified).then(|| BehaviorPair {
                pattern: p,
                original: f.clone(),
                modified,
            })
        })
        .collect()
}

/// `original<TAB>modified` per line.
pub fn write_pairs(path: impl AsRef<Path>, pairs: &[BehaviorPair]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for pair in pairs {
        writeln!(w, "{}\t{}", pair.original, pair.modified)?;
    }
    w.flush()
}

/// Reads a pairs file. The pattern is recovered as the probed pattern whose
/// negations, when dropped from the original, give the modified formula.
pub fn read_pairs(path: impl AsRef<Path>) -> anyhow::Result<Vec<BehaviorPair>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (o, m) = line
            .split_once('\t')
            .ok_or_else(|| anyhow::anyhow!("line {}: expected `original<TAB>modified`", i + 1))?;
        let original: Formula = o.parse().map_err(|e| anyhow::anyhow!("line {}: {e}", i + 1))?;
        let modified: Formula = m.parse().map_err(|e| anyhow::anyhow!("line {}: {e}", i + 1))?;
        let pattern = [PatternId::P1, PatternId::P2, PatternId::P3]
            .into_iter()
            .find(|p| original.contains_pattern(*p) && drop_probed_negations(&original, *p) == modified)
            .ok_or_else(|| {
                anyhow::anyhow!(
                    "line {}: modified formula is not a negation drop of the original",
                    i + 1
                )
            })?;
        out.push(BehaviorPair {
            pattern,
            original,
            modified,
        });
    }
    Ok(out)
}
