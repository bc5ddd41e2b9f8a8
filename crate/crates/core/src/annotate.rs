//! Per-token tree structure for structure-aware encoders.
//!
//! Tokens are numbered in Polish order. Each token gets the branch labels on
//! its root path (left = 0, right = 1, the only child of a negation = 0) and
//! an adjacency list of its parent, its children and itself.
//!
//! Path vectors are one-hot per step and root-first: step `k` occupies
//! positions `2k` and `2k + 1`, `[1, 0]` for label 0, `[0, 1]` for label 1 and
//! `[0, 0]` for padding beyond the token's depth.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Datapoint;
use crate::formula::Formula;

pub const DEFAULT_DEPTH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("formula depth {depth} exceeds the cap of {cap}")]
pub struct DepthCapExceeded {
    pub depth: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub tokens: Vec<&'static str>,
    /// Unpadded branch labels from the root, one list per token.
    pub branches: Vec<Vec<u8>>,
    /// Sorted neighbour indices per token, including the token itself.
    pub adjacency: Vec<Vec<usize>>,
    pub depth_cap: usize,
}

impl Annotation {
    /// Flattened one-hot path vector of length `2 * depth_cap` per token.
    pub fn path_vectors(&self) -> Vec<Vec<u8>> {
        self.branches
            .iter()
            .map(|labels| {
                let mut v = vec![0u8; 2 * self.depth_cap];
                for (step, label) in labels.iter().enumerate() {
                    v[2 * step + *label as usize] = 1;
                }
                v
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

pub fn annotate(f: &Formula, depth_cap: usize) -> Result<Annotation, DepthCapExceeded> {
    let depth = f.depth();
    if depth > depth_cap {
        return Err(DepthCapExceeded { depth, cap: depth_cap });
    }
    let mut ann = Annotation {
        tokens: Vec::with_capacity(f.size()),
        branches: Vec::new(),
        adjacency: Vec::new(),
        depth_cap,
    };
    walk(f, None, Vec::new(), &mut ann);
    for list in &mut ann.adjacency {
        list.sort_unstable();
    }
    Ok(ann)
}

fn walk(node: &Formula, parent: Option<usize>, path: Vec<u8>, ann: &mut Annotation) {
    let me = ann.tokens.len();
    ann.tokens.push(node.head_token());
    ann.branches.push(path.clone());
    ann.adjacency.push(vec![me]);
    if let Some(p) = parent {
        ann.adjacency[p].push(me);
        ann.adjacency[me].push(p);
    }
    let child_path = |label: u8| {
        let mut p = path.clone();
        p.push(label);
        p
    };
    match node {
        Formula::Var(_) => {}
        Formula::Not(c) => walk(c, Some(me), child_path(0), ann),
        Formula::Bin(_, l, r) => {
            walk(l, Some(me), child_path(0), ann);
            walk(r, Some(me), child_path(1), ann);
        }
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct AnnotationRecord {
    pub index: usize,
    pub tokens: Vec<String>,
    pub paths: Vec<Vec<u8>>,
    pub adjacency: Vec<Vec<usize>>,
}

impl AnnotationRecord {
    pub fn new(index: usize, ann: &Annotation) -> Self {
        AnnotationRecord {
            index,
            tokens: ann.tokens.iter().map(|t| t.to_string()).collect(),
            paths: ann.path_vectors(),
            adjacency: ann.adjacency.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum AnnotateFileError {
    #[error("datapoint {index}: {source}")]
    Depth {
        index: usize,
        #[source]
        source: DepthCapExceeded,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Writes one JSON record per datapoint, keyed by its index.
pub fn write_annotations(
    path: impl AsRef<Path>,
    dataset: &[Datapoint],
    depth_cap: usize,
) -> Result<(), AnnotateFileError> {
    let mut w = BufWriter::new(File::create(path)?);
    for (index, dp) in dataset.iter().enumerate() {
        let ann = annotate(&dp.formula, depth_cap).map_err(|source| AnnotateFileError::Depth { index, source })?;
        serde_json::to_writer(&mut w, &AnnotationRecord::new(index, &ann)).map_err(std::io::Error::from)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}
