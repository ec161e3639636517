use std::collections::BTreeMap;

use crate::resolve::{is_negative_definite, DualGraph};
use crate::scalar::Rat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DVertex {
    pub self_int: i64,
    pub is_l: bool,
    pub rate: Option<Rat>,
    /// Component of the tangent cone represented by an Ⓛ-vertex.
    pub component: Option<usize>,
    pub mult: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DArrow {
    /// `None` only for a germ that needed no blow-up.
    pub at: Option<usize>,
    pub mult: Option<i64>,
}

/// Dual graph with self-intersections, Ⓛ-flags, rates and multiplicity
/// annotations. Edges may repeat and may be loops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecoratedGraph {
    pub vertices: Vec<DVertex>,
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<DArrow>,
}

impl DecoratedGraph {
    /// Plain graph of a plane-curve resolution.
    pub fn from_dual(g: &DualGraph) -> Self {
        DecoratedGraph {
            vertices: g
                .vertices
                .iter()
                .map(|v| DVertex { self_int: v.self_int, ..Default::default() })
                .collect(),
            edges: g.edges.clone(),
            arrows: g.arrows.iter().map(|a| DArrow { at: a.at, mult: a.mult }).collect(),
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            }
            if b == v {
                out.push(a);
            }
        }
        out
    }

    /// Incident edge ends plus arrows.
    pub fn valency(&self, v: usize) -> usize {
        self.neighbors(v).len() + self.arrows.iter().filter(|a| a.at == Some(v)).count()
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.self_int;
        }
        for &(a, b) in &self.edges {
            if a == b {
                m[a][a] += 2;
            } else {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
        m
    }

    pub fn is_negative_definite(&self) -> bool {
        is_negative_definite(&self.intersection_matrix())
    }

    pub fn l_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].is_l).collect()
    }

    /// Values of a multiplicity annotation in vertex order.
    pub fn mult_vector(&self, name: &str) -> Option<Vec<i64>> {
        self.vertices.iter().map(|v| v.mult.get(name).copied()).collect()
    }
}
