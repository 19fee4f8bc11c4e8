//! Stable JSON file formats.
//!
//! Families: `{"lists": [[colors...], ...]}` with colors as arbitrary JSON
//! numbers or strings on input; the loader relabels them to 0..V-1 in
//! first-appearance order and reports the mapping. Saving always writes
//! canonical ids, so load -> save is idempotent byte-for-byte.
//! Hypergraphs: `{"vertex_count": V, "edges": [[colors...], ...]}` with
//! edges in ascending member-list order. Covers carry their edge size k.

use crate::choosability::Assignment;
use crate::cover::{Cover, CoverValue};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ListFamily};
use crate::quotient::WeightedFamily;
use crate::set::{Color, ColorSet};
use crate::solver::SolveReport;
use serde_json::{json, Map, Value};

/// A family plus the original labels of its canonicalized colors
/// (`labels[id]` is what the file called color `id`).
#[derive(Debug, Clone)]
pub struct LoadedFamily {
    pub family: ListFamily,
    pub labels: Vec<String>,
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(Error::InvalidFile(format!("color label must be a number or string, got {other}"))),
    }
}

fn raw_lists(value: &Value) -> Result<&Vec<Value>> {
    value
        .get("lists")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidFile("expected an object with a \"lists\" array".into()))
}

/// Relabels the colors of one or more raw list arrays to 0..V-1 in
/// first-appearance order; the shared map makes jointly loaded files live
/// in one color space.
struct Canonicalizer {
    labels: Vec<String>,
}

impl Canonicalizer {
    fn new() -> Self {
        Canonicalizer { labels: Vec::new() }
    }

    fn id_of(&mut self, label: String) -> Result<Color> {
        if let Some(i) = self.labels.iter().position(|l| *l == label) {
            return Ok(i as Color);
        }
        if self.labels.len() >= crate::set::MAX_COLORS {
            return Err(Error::TooManyColors {
                count: self.labels.len() + 1,
                max: crate::set::MAX_COLORS,
            });
        }
        self.labels.push(label);
        Ok(self.labels.len() as Color - 1)
    }

    fn lists(&mut self, raw: &[Value]) -> Result<Vec<Vec<Color>>> {
        raw.iter()
            .map(|l| {
                let arr = l
                    .as_array()
                    .ok_or_else(|| Error::InvalidFile("each list must be an array".into()))?;
                arr.iter().map(|v| self.id_of(label_of(v)?)).collect()
            })
            .collect()
    }
}

pub fn load_family(text: &str) -> Result<LoadedFamily> {
    let value: Value = serde_json::from_str(text)?;
    let mut canon = Canonicalizer::new();
    let lists = canon.lists(raw_lists(&value)?)?;
    Ok(LoadedFamily { family: ListFamily::new(&lists)?, labels: canon.labels })
}

/// Loads the two sides of an assignment into one shared canonical space.
pub fn load_assignment(m_text: &str, n_text: &str) -> Result<(Assignment, Vec<String>)> {
    let m_value: Value = serde_json::from_str(m_text)?;
    let n_value: Value = serde_json::from_str(n_text)?;
    let mut canon = Canonicalizer::new();
    let m_lists = canon.lists(raw_lists(&m_value)?)?;
    let n_lists = canon.lists(raw_lists(&n_value)?)?;
    let a = Assignment::from_lists(&m_lists, &n_lists)?;
    Ok((a, canon.labels))
}

fn edge_array(e: ColorSet) -> Value {
    Value::Array(e.iter().map(|c| json!(c)).collect())
}

fn edges_array(edges: &[ColorSet]) -> Value {
    Value::Array(edges.iter().map(|e| edge_array(*e)).collect())
}

pub fn family_to_value(f: &ListFamily) -> Value {
    json!({ "lists": f.lists().iter().map(|l| edge_array(*l)).collect::<Vec<_>>() })
}

pub fn hypergraph_to_value(h: &Hypergraph) -> Value {
    json!({ "vertex_count": h.vertex_count(), "edges": edges_array(h.edges()) })
}

pub fn load_hypergraph(text: &str) -> Result<Hypergraph> {
    let value: Value = serde_json::from_str(text)?;
    let vertex_count = value
        .get("vertex_count")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidFile("expected a numeric \"vertex_count\"".into()))? as usize;
    let edges = value
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidFile("expected an \"edges\" array".into()))?;
    Hypergraph::new(vertex_count, parse_edge_arrays(edges)?)
}

pub fn weighted_family_to_value(wf: &WeightedFamily) -> Value {
    let mut weights = Map::new();
    for class in wf.classes() {
        weights.insert(class.representative.to_string(), json!(class.weight()));
    }
    json!({
        "lists": wf.family().lists().iter().map(|l| edge_array(*l)).collect::<Vec<_>>(),
        "weights": Value::Object(weights),
        "classes": wf.classes().iter().map(|c| edge_array(c.members)).collect::<Vec<_>>(),
    })
}

pub fn cover_to_value(c: &Cover) -> Value {
    json!({ "k": c.k(), "edges": edges_array(c.edges()) })
}

pub fn load_cover(text: &str) -> Result<Cover> {
    let value: Value = serde_json::from_str(text)?;
    let k = value
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidFile("expected a numeric \"k\"".into()))? as usize;
    let edges = value
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidFile("expected an \"edges\" array".into()))?;
    Cover::new(k, parse_edge_arrays(edges)?)
}

fn parse_edge_arrays(edges: &[Value]) -> Result<Vec<ColorSet>> {
    edges
        .iter()
        .map(|e| {
            let arr = e
                .as_array()
                .ok_or_else(|| Error::InvalidFile("each edge must be an array".into()))?;
            let mut set = ColorSet::EMPTY;
            for v in arr {
                let c = v
                    .as_u64()
                    .ok_or_else(|| Error::InvalidFile("edge members must be numbers".into()))?;
                if c >= crate::set::MAX_COLORS as u64 {
                    return Err(Error::TooManyColors {
                        count: c as usize + 1,
                        max: crate::set::MAX_COLORS,
                    });
                }
                set.insert(c as Color);
            }
            Ok(set)
        })
        .collect()
}

pub fn solve_report_to_value(r: &SolveReport) -> Value {
    let (value, infinite) = match &r.value {
        CoverValue::Finite(v) => (json!(v.to_string()), false),
        CoverValue::Infinite => (Value::Null, true),
    };
    json!({
        "value": value,
        "infinite": infinite,
        "cover": r.cover.as_ref().map(|c| edges_array(c.edges())).unwrap_or(Value::Null),
        "nodes": r.nodes_explored,
        "ms": r.elapsed.as_millis() as u64,
        "method": r.method.as_str(),
    })
}

/// Pretty JSON with a trailing newline; the canonical on-disk form.
pub fn to_pretty_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built in this module serialize");
    s.push('\n');
    s
}
