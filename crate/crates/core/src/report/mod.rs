//! Serialization of decorated graphs and isomorphism testing.

mod iso;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::resolve::DualGraph;
use crate::scalar::Rat;
use crate::sis::{DArrow, DVertex, DecoratedGraph};

pub use iso::{canonical_order, isomorphic, isomorphism, permute};

pub const SCHEMA_VERSION: u64 = 1;

/// How a document was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Input polynomials as given.
    #[serde(default)]
    pub input: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Coordinate changes applied to the input.
    #[serde(default)]
    pub coordinate_changes: Vec<String>,
    /// Minimal polynomials of the field extensions used, one per point
    /// class that needed one.
    #[serde(default)]
    pub field_extensions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Further named facts, such as polar coefficients.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: DecoratedGraph,
    pub provenance: Provenance,
}

impl GraphDocument {
    /// Puts the vertices in canonical order. Component indices are not part
    /// of a document and are dropped.
    pub fn new(graph: &DecoratedGraph, provenance: Provenance) -> Self {
        let mut graph = permute(graph, &canonical_order(graph));
        for v in &mut graph.vertices {
            v.component = None;
        }
        GraphDocument { graph, provenance }
    }

    /// Document of a plane-curve resolution.
    pub fn from_dual(g: &DualGraph, provenance: Provenance) -> Self {
        Self::new(&DecoratedGraph::from_dual(g), provenance)
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let vertices: Vec<Value> = g
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut o = Map::new();
                o.insert("id".into(), json!(i));
                o.insert("self_int".into(), json!(v.self_int));
                o.insert("is_L".into(), json!(v.is_l));
                if let Some(r) = &v.rate {
                    o.insert("rate".into(), json!(format!("{}/{}", r.numer(), r.denom())));
                }
                if !v.mult.is_empty() {
                    o.insert("mult".into(), json!(v.mult));
                }
                Value::Object(o)
            })
            .collect();
        let edges: Vec<Value> = g.edges.iter().map(|&(a, b)| json!([a, b])).collect();
        let arrows: Vec<Value> = g
            .arrows
            .iter()
            .map(|a| {
                let mut o = Map::new();
                o.insert("at".into(), json!(a.at));
                if let Some(m) = a.mult {
                    o.insert("mult".into(), json!(m));
                }
                Value::Object(o)
            })
            .collect();
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "vertices": vertices,
            "edges": edges,
            "arrows": arrows,
            "provenance": self.provenance,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain values");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let found = doc
            .get("schema")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Document("missing schema version".into()))?;
        if found != SCHEMA_VERSION {
            return Err(Error::SchemaVersionMismatch { found, expected: SCHEMA_VERSION });
        }
        let raw: RawDoc = serde_json::from_value(doc).map_err(|e| Error::Document(e.to_string()))?;
        let n = raw.vertices.len();
        let mut vertices = Vec::with_capacity(n);
        for (i, v) in raw.vertices.into_iter().enumerate() {
            if v.id != i {
                return Err(Error::Document(format!("vertex {i} has id {}", v.id)));
            }
            let rate = v.rate.as_deref().map(parse_rat).transpose()?;
            vertices.push(DVertex { self_int: v.self_int, is_l: v.is_l, rate, component: None, mult: v.mult });
        }
        let check = |x: usize| {
            if x < n {
                Ok(x)
            } else {
                Err(Error::Document(format!("vertex {x} out of range")))
            }
        };
        let edges = raw
            .edges
            .into_iter()
            .map(|[a, b]| Ok((check(a)?, check(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let arrows = raw
            .arrows
            .into_iter()
            .map(|a| Ok(DArrow { at: a.at.map(check).transpose()?, mult: a.mult }))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphDocument { graph: DecoratedGraph { vertices, edges, arrows }, provenance: raw.provenance })
    }

    /// GraphViz text: Ⓛ-vertices filled black, arrows as edges to invisible
    /// points.
    pub fn to_dot(&self) -> String {
        let g = &self.graph;
        let mut s = String::from("graph G {\n  node [shape=circle];\n");
        for (i, v) in g.vertices.iter().enumerate() {
            let mut parts = vec![v.self_int.to_string()];
            if let Some(r) = &v.rate {
                parts.push(format!("rate {r}"));
            }
            if !v.mult.is_empty() {
                let m: Vec<String> = v.mult.iter().map(|(k, x)| format!("{k}={x}")).collect();
                parts.push(m.join(" "));
            }
            let style = if v.is_l { ", style=filled, fillcolor=black, fontcolor=white" } else { "" };
            let _ = writeln!(s, "  v{i} [label=\"{}\"{style}];", parts.join(" / "));
        }
        for &(a, b) in &g.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        for (j, a) in g.arrows.iter().enumerate() {
            let label = a.mult.map(|m| format!(", label=\"({m})\"")).unwrap_or_default();
            match a.at {
                Some(v) => {
                    let _ = writeln!(s, "  a{j} [shape=point, style=invis];");
                    let _ = writeln!(s, "  v{v} -- a{j} [dir=forward, arrowhead=normal{label}];");
                }
                None => {
                    let _ = writeln!(s, "  a{j} [shape=plaintext, label=\"→\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.parse::<Rat>().map_err(|_| Error::Document(format!("bad rational `{s}`")))
}

#[derive(Deserialize)]
struct RawVertex {
    id: usize,
    self_int: i64,
    #[serde(rename = "is_L")]
    is_l: bool,
    #[serde(default)]
    rate: Option<String>,
    #[serde(default)]
    mult: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
struct RawArrow {
    at: Option<usize>,
    #[serde(default)]
    mult: Option<i64>,
}

#[derive(Deserialize)]
struct RawDoc {
    vertices: Vec<RawVertex>,
    edges: Vec<[usize; 2]>,
    arrows: Vec<RawArrow>,
    #[serde(default)]
    provenance: Provenance,
}

#[cfg(test)]
mod tests;
