//! Report assembly and rendering.
//!
//! Every subcommand produces a [`Report`]: the input it ran on, the
//! operation name, a payload tree, and the elapsed wall time. Structured
//! output is JSON with keys in sorted order (serde_json's default map type
//! keeps keys sorted), so two runs with the same input and seed produce
//! byte-identical output except for the `elapsed_ms` field. Text output is
//! an indented rendering of the same tree.

use std::fmt::Write as _;

use serde_json::{json, Value};
use trilie::map_spaces::MapSpace;
use trilie::matrix::Matrix;
use trilie::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub algebra_id: String,
    pub operation: String,
    pub payload: Value,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let tree = json!({
                    "algebra_id": self.algebra_id,
                    "operation": self.operation,
                    "elapsed_ms": self.elapsed_ms,
                    "payload": self.payload,
                });
                let mut out =
                    serde_json::to_string_pretty(&tree).expect("report trees serialize");
                out.push('\n');
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "algebra: {}", self.algebra_id);
                let _ = writeln!(out, "operation: {}", self.operation);
                let _ = writeln!(out, "elapsed_ms: {}", self.elapsed_ms);
                out.push('\n');
                write_value(&mut out, &self.payload, 0);
                out
            }
        }
    }
}

/// Renders a leaf value; containers return `None`.
fn inline_leaf(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
    }
}

/// Renders a value on one line when it is a leaf or an array of leaves.
fn inline(v: &Value) -> Option<String> {
    if let Value::Array(items) = v {
        let parts: Option<Vec<String>> = items.iter().map(inline_leaf).collect();
        return parts.map(|p| format!("[{}]", p.join(", ")));
    }
    inline_leaf(v)
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match inline(val) {
                    Some(line) if line.is_empty() => {
                        let _ = writeln!(out, "{pad}{key}:");
                    }
                    Some(line) => {
                        let _ = writeln!(out, "{pad}{key}: {line}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{key}:");
                        write_value(out, val, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(line) = inline(item) {
                    let _ = writeln!(out, "{pad}- {line}");
                } else {
                    let _ = writeln!(out, "{pad}-");
                    write_value(out, item, depth + 1);
                }
            }
        }
        other => {
            let line = inline(other).expect("non-container values render inline");
            let _ = writeln!(out, "{pad}{line}");
        }
    }
}

pub fn scalar_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_value(m.row(r))).collect())
}

/// Dimension and basis of a space of single maps. The basis matrices are
/// listed in row-reduced order.
pub fn map_space_value(space: &MapSpace) -> Value {
    assert_eq!(space.arity(), 1, "only single-map spaces are reported this way");
    json!({
        "dim": space.dim(),
        "basis": Value::Array(
            space.basis_matrices().iter().map(matrix_value).collect()
        ),
    })
}
