//! JSON file format for algebras.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "labels": ["e1", "e2", "e3"],
//!   "brackets": [
//!     { "i": 1, "j": 2, "k": 3, "value": ["1", "0", "0"] }
//!   ],
//!   "torus": [["0", "1", "0"], ["0", "0", "1"]]
//! }
//! ```
//!
//! Indices in files are 1-based and must be strictly increasing. Scalar
//! entries are strings like `"-2/3"`; plain JSON integers are also accepted.
//! `labels` and `torus` are optional.

use crate::algebra::{Algebra, AlgebraError, FiViolation};
use crate::scalar::{parse_scalar, Scalar, ScalarParseError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid scalar in {context}: {source}")]
    Scalar {
        context: String,
        source: ScalarParseError,
    },
    #[error("bracket indices are 1-based; found 0 in entry ({i}, {j}, {k})")]
    ZeroIndex { i: usize, j: usize, k: usize },
    #[error("bracket entry ({i}, {j}, {k}): indices must be strictly increasing")]
    IndicesNotIncreasing { i: usize, j: usize, k: usize },
    #[error("bracket entry ({i}, {j}, {k}): index exceeds dim {dim}")]
    IndexRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("duplicate bracket entry ({i}, {j}, {k})")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("bracket entry ({i}, {j}, {k}): value has length {got}, expected {expected}")]
    ValueLength {
        i: usize,
        j: usize,
        k: usize,
        expected: usize,
        got: usize,
    },
    #[error("{got} labels for dim {expected}")]
    LabelCount { expected: usize, got: usize },
    #[error("torus row {row} has length {got}, expected {expected}")]
    TorusRowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
}

/// Errors from loading a full file, split so callers can distinguish a
/// malformed file from a well-formed table that is not a 3-Lie algebra.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid bracket table: {0}")]
    Structure(AlgebraError),
    #[error("not a 3-Lie algebra: the fundamental identity fails on {} basis 5-tuple(s)", .0.len())]
    Identity(Vec<FiViolation>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

impl RawScalar {
    fn parse(&self, context: &str) -> Result<Scalar, FormatError> {
        let text = match self {
            RawScalar::Int(v) => v.to_string(),
            RawScalar::Text(t) => t.clone(),
        };
        parse_scalar(&text).map_err(|source| FormatError::Scalar {
            context: context.to_string(),
            source,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawBracket {
    i: usize,
    j: usize,
    k: usize,
    value: Vec<RawScalar>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawFile {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    brackets: Vec<RawBracket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    torus: Option<Vec<Vec<RawScalar>>>,
}

/// A file parsed down to exact scalars, before algebra validation.
#[derive(Debug)]
pub struct ParsedFile {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub entries: Vec<((usize, usize, usize), Vec<Scalar>)>,
    pub torus: Option<Vec<Vec<Scalar>>>,
}

/// An algebra loaded from a file, with its optional torus.
#[derive(Debug)]
pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub torus: Option<Vec<Vec<Scalar>>>,
}

pub fn parse_file(text: &str) -> Result<ParsedFile, FormatError> {
    let raw: RawFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if let Some(labels) = &raw.labels {
        if labels.len() != raw.dim {
            return Err(FormatError::LabelCount {
                expected: raw.dim,
                got: labels.len(),
            });
        }
    }
    let mut entries = Vec::with_capacity(raw.brackets.len());
    let mut seen = std::collections::BTreeSet::new();
    for b in &raw.brackets {
        if b.i == 0 || b.j == 0 || b.k == 0 {
            return Err(FormatError::ZeroIndex {
                i: b.i,
                j: b.j,
                k: b.k,
            });
        }
        if !(b.i < b.j && b.j < b.k) {
            return Err(FormatError::IndicesNotIncreasing {
                i: b.i,
                j: b.j,
                k: b.k,
            });
        }
        if b.k > raw.dim {
            return Err(FormatError::IndexRange {
                i: b.i,
                j: b.j,
                k: b.k,
                dim: raw.dim,
            });
        }
        if !seen.insert((b.i, b.j, b.k)) {
            return Err(FormatError::DuplicateEntry {
                i: b.i,
                j: b.j,
                k: b.k,
            });
        }
        if b.value.len() != raw.dim {
            return Err(FormatError::ValueLength {
                i: b.i,
                j: b.j,
                k: b.k,
                expected: raw.dim,
                got: b.value.len(),
            });
        }
        let context = format!("bracket ({}, {}, {})", b.i, b.j, b.k);
        let value = b
            .value
            .iter()
            .map(|s| s.parse(&context))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(((b.i - 1, b.j - 1, b.k - 1), value));
    }
    let torus = match &raw.torus {
        None => None,
        Some(rows) => {
            let mut out = Vec::with_capacity(rows.len());
            for (r, row) in rows.iter().enumerate() {
                if row.len() != raw.dim {
                    return Err(FormatError::TorusRowLength {
                        row: r + 1,
                        expected: raw.dim,
                        got: row.len(),
                    });
                }
                let context = format!("torus row {}", r + 1);
                out.push(
                    row.iter()
                        .map(|s| s.parse(&context))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            Some(out)
        }
    };
    Ok(ParsedFile {
        dim: raw.dim,
        labels: raw.labels,
        entries,
        torus,
    })
}

/// Parses and fully validates a file, including the fundamental identity.
pub fn load(text: &str) -> Result<LoadedAlgebra, LoadError> {
    let parsed = parse_file(text)?;
    let algebra = Algebra::new_unchecked(parsed.dim, parsed.labels, parsed.entries)
        .map_err(LoadError::Structure)?;
    let violations = algebra.fundamental_identity_violations();
    if !violations.is_empty() {
        return Err(LoadError::Identity(violations));
    }
    Ok(LoadedAlgebra {
        algebra,
        torus: parsed.torus,
    })
}

/// Serializes an algebra (and optional torus) back to the file format.
/// Output is deterministic: entries are emitted in index order and scalars
/// are rendered as `p/q` strings.
pub fn to_json(algebra: &Algebra, torus: Option<&[Vec<Scalar>]>) -> String {
    let brackets = algebra
        .stored_entries()
        .map(|(&(i, j, k), value)| RawBracket {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            value: value
                .iter()
                .map(|s| RawScalar::Text(s.to_string()))
                .collect(),
        })
        .collect();
    let raw = RawFile {
        dim: algebra.dim(),
        labels: algebra.labels().map(|l| l.to_vec()),
        brackets,
        torus: torus.map(|rows| {
            rows.iter()
                .map(|row| row.iter().map(|s| RawScalar::Text(s.to_string())).collect())
                .collect()
        }),
    };
    serde_json::to_string_pretty(&raw).expect("file structs serialize")
}
