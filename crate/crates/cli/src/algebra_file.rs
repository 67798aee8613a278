//! JSON structure-constant files.
//!
//! ```json
//! { "name": "so(3)", "dim": 3,
//!   "brackets": [ { "i": 0, "j": 1, "terms": [ { "k": 2, "c": 1.0 } ] } ] }
//! ```
//!
//! Indices are 0-based, only `i < j` entries are allowed and missing pairs
//! are zero brackets.

use std::fs;
use std::path::{Path, PathBuf};

use confhol::lie_algebra::SparseBracket;
use confhol::LieAlgebraSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: malformed algebra file at line {line}, column {column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: {source}")]
    Content {
        origin: String,
        #[source]
        source: confhol::Error,
    },
}

impl AlgebraFile {
    pub fn from_spec(spec: &LieAlgebraSpec) -> Self {
        let n = spec.dim();
        let c = spec.structure();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<Term> = (0..n)
                    .filter(|&k| c.get(i, j, k) != 0.0)
                    .map(|k| Term {
                        k,
                        c: c.get(i, j, k),
                    })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry { i, j, terms });
                }
            }
        }
        Self {
            name: spec.name().to_string(),
            dim: n,
            brackets,
        }
    }

    pub fn to_spec(&self) -> confhol::Result<LieAlgebraSpec> {
        let entries: Vec<SparseBracket> = self
            .brackets
            .iter()
            .map(|b| (b.i, b.j, b.terms.iter().map(|t| (t.k, t.c)).collect()))
            .collect();
        LieAlgebraSpec::from_brackets(self.name.clone(), self.dim, &entries)
    }
}

/// Parses file contents; `origin` labels diagnostics.
pub fn parse_algebra_str(text: &str, origin: &str) -> Result<LieAlgebraSpec, FileError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| FileError::Syntax {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_spec().map_err(|source| FileError::Content {
        origin: origin.to_string(),
        source,
    })
}

pub fn parse_algebra_file(path: &Path) -> Result<LieAlgebraSpec, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_algebra_str(&text, &path.display().to_string())
}

pub fn to_json(spec: &LieAlgebraSpec) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_spec(spec)).expect("algebra file serializes")
}
