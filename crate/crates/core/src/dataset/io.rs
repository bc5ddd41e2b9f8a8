use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::Datapoint;
use crate::assignment::{Assignment, AssignmentError};
use crate::formula::{parse_polish, tokenize, ParseError};

#[derive(Debug, Error)]
pub enum DatasetIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `formula<TAB>target`")]
    MissingTab { line: usize },
    #[error("line {line}: bad formula: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: bad target: {source}")]
    Target {
        line: usize,
        #[source]
        source: AssignmentError,
    },
}

/// `formula-tokens<TAB>target-tokens`, no trailing newline.
pub fn format_datapoint(dp: &Datapoint) -> String {
    format!("{}\t{}", dp.formula, dp.target)
}

/// Parses one dataset line. `line` is 1-based and only used in errors.
pub fn parse_datapoint(text: &str, line: usize) -> Result<Datapoint, DatasetIoError> {
    let (input, target) = text.split_once('\t').ok_or(DatasetIoError::MissingTab { line })?;
    let formula = parse_polish(&tokenize(input)).map_err(|source| DatasetIoError::Formula { line, source })?;
    let target: Assignment = target
        .parse()
        .map_err(|source| DatasetIoError::Target { line, source })?;
    Ok(Datapoint { formula, target })
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<Vec<Datapoint>, DatasetIoError> {
    let path = path.as_ref();
    let io_err = |source| DatasetIoError::Io {
        path: path.to_path_buf(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_datapoint(&line, i + 1)?);
    }
    Ok(out)
}

pub fn write_dataset(path: impl AsRef<Path>, dataset: &[Datapoint]) -> Result<(), DatasetIoError> {
    let path = path.as_ref();
    let io_err = |source| DatasetIoError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    for dp in dataset {
        writeln!(w, "{}", format_datapoint(dp)).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}
