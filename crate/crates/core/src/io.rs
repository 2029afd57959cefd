//! Input document schemas and canonical JSON output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bar::{Bar, Barcode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: u64,
    pub value: f64,
}

/// `{"field": 2, "vertices": [{"id": 0, "value": 0.0}, …], "simplices": [[0, 1], …]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    pub vertices: Vec<VertexEntry>,
    pub simplices: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleVertexEntry {
    pub id: u64,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindingEntry {
    pub edge: [u64; 2],
    pub w: i64,
}

/// Angle-valued input: angles in `[0, 2π)` and integer windings on edges
/// (edges not listed have winding 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    pub vertices: Vec<AngleVertexEntry>,
    pub simplices: Vec<Vec<u64>>,
    #[serde(default)]
    pub winding: Vec<WindingEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub degree: usize,
    pub value: f64,
    pub name: String,
}

/// Chain complex input. `boundaries["r"]` lists `[row, col, coeff]` entries of
/// `∂_r`, where `col` indexes degree-`r` generators and `row` indexes
/// degree-`(r-1)` generators, both in listing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub boundaries: BTreeMap<String, Vec<(usize, usize, i64)>>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::validation(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn parse_space(text: &str) -> Result<SpaceDocument> {
    parse(text)
}

pub fn parse_angle(text: &str) -> Result<AngleDocument> {
    parse(text)
}

pub fn parse_chain_complex(text: &str) -> Result<ChainComplexDocument> {
    parse(text)
}

pub fn endpoint(x: f64) -> Value {
    if x == f64::INFINITY {
        Value::from("inf")
    } else if x == f64::NEG_INFINITY {
        Value::from("-inf")
    } else {
        json!(x)
    }
}

pub fn bar_json(bar: &Bar, multiplicity: usize) -> Value {
    json!({
        "degree": bar.degree,
        "left": endpoint(bar.left),
        "right": endpoint(bar.right),
        "left_closed": bar.left_closed,
        "right_closed": bar.right_closed,
        "multiplicity": multiplicity,
    })
}

/// Bars in canonical order (degree, left, right, type).
pub fn barcode_json(code: &Barcode) -> Value {
    Value::Array(code.iter().map(|(b, m)| bar_json(b, m)).collect())
}

/// Pretty JSON with sorted keys and shortest round-trip floats, newline
/// terminated.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value serializes");
    s.push('\n');
    s
}
