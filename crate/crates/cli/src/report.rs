//! Report assembly and deterministic emission.
//!
//! Reports are JSON values whose object keys are sorted (the default
//! `serde_json` map is ordered), scalars are serialized as exact strings,
//! and repeated runs over the same input are byte-identical.

use serde_json::{json, Value};

use qforge_core::deform::FiniteGradedAlgebra;
use qforge_core::quadalg::QuadraticPresentation;
use qforge_core::scalar::Scalar;
use qforge_core::subspace::Subspace;
use qforge_core::tensor::Tensor;

use crate::dsl::print_poly;

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub algebra: String,
    pub conventions: Value,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, file_name: &str, p: &QuadraticPresentation, result: Value) -> Self {
        Report {
            command: command.to_string(),
            algebra: file_name.to_string(),
            conventions: json!({
                "field": p.field().name(),
                "generator_order": p.generators(),
                "word_order": "deglex (length, then lexicographic in generator order)",
                "relation_basis": "reduced echelon form; named vectors are re-expressed from the listed relation order",
            }),
            result,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "algebra": self.algebra,
            "conventions": self.conventions,
            "result": self.result,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_value()).expect("report is JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(&report.to_value(), 0, None, &mut out);
            out
        }
    }
}

fn render_text(v: &Value, indent: usize, key: Option<&str>, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            if let Some(k) = key {
                out.push_str(&format!("{pad}{k}:\n"));
            }
            for (k, val) in map {
                render_text(val, indent + usize::from(key.is_some()), Some(k), out);
            }
        }
        Value::Array(items) => {
            let k = key.unwrap_or("-");
            if items.iter().all(is_scalar_like) {
                let rendered: Vec<String> = items.iter().map(plain).collect();
                out.push_str(&format!("{pad}{k}: [{}]\n", rendered.join(", ")));
            } else {
                out.push_str(&format!("{pad}{k}:\n"));
                for item in items {
                    match item {
                        Value::Array(inner) if inner.iter().all(is_scalar_like) => {
                            let rendered: Vec<String> = inner.iter().map(plain).collect();
                            out.push_str(&format!("{pad}  - [{}]\n", rendered.join(", ")));
                        }
                        other => render_text(other, indent + 1, Some("-"), out),
                    }
                }
            }
        }
        scalar => {
            let k = key.unwrap_or("value");
            out.push_str(&format!("{pad}{k}: {}\n", plain(scalar)));
        }
    }
}

fn is_scalar_like(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn scalar_str(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_vec(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_str).collect())
}

pub fn poly_strings(tensors: &[Tensor], names: &[String]) -> Value {
    Value::Array(
        tensors
            .iter()
            .map(|t| Value::String(print_poly(t, names)))
            .collect(),
    )
}

pub fn subspace_value(s: &Subspace, names: &[String]) -> Value {
    json!({
        "dim": s.dim(),
        "basis": poly_strings(s.basis(), names),
    })
}

/// Sparse structure constants as sorted `[i, j, k, coefficient]` rows.
pub fn structure_constants(a: &FiniteGradedAlgebra) -> Value {
    let mut rows = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.basis_product(i, j) {
                rows.push(json!([i, j, k, c.to_string()]));
            }
        }
    }
    Value::Array(rows)
}

pub fn algebra_value(a: &FiniteGradedAlgebra) -> Value {
    let basis: Vec<Value> = (0..a.dim())
        .map(|i| {
            json!({
                "degree": a.degree(i),
                "label": a.labels()[i],
                "parity": a.parity(i),
            })
        })
        .collect();
    json!({
        "basis": basis,
        "dim": a.dim(),
        "structure_constants": structure_constants(a),
        "unit_index": a.unit_index(),
    })
}

/// Structured error payload for failed runs.
pub fn error_value(code: &str, message: &str) -> Value {
    json!({
        "error": code,
        "message": message,
    })
}

pub fn emit_error(code: &str, message: &str, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&error_value(code, message)).expect("error is JSON");
            s.push('\n');
            s
        }
        Format::Text => format!("error[{code}]: {message}\n"),
    }
}
