use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::BlowupTree;
use crate::scalar::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVertex {
    pub curve: usize,
    /// Conjugate-copy index at each level of the curve's ancestry.
    pub path: Vec<usize>,
    pub self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualArrow {
    pub at: Option<usize>,
    pub label: usize,
    pub mult: Option<i64>,
}

/// Dual graph of the exceptional divisor with arrows for strict-transform
/// branches. Edges may repeat.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<DualArrow>,
}

impl DualGraph {
    /// Expands conjugate classes of curves into individual vertices.
    pub fn from_tree(tree: &BlowupTree) -> Self {
        let mut g = DualGraph::default();
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut instances: Vec<Vec<Vec<usize>>> = Vec::with_capacity(tree.curves.len());
        for c in &tree.curves {
            let parents = match c.parent {
                None => vec![Vec::new()],
                Some(p) => instances[p].clone(),
            };
            let mut mine = Vec::new();
            for p in parents {
                for j in 0..c.copies {
                    let mut path = p.clone();
                    path.push(j);
                    index.insert((c.id, path.clone()), g.vertices.len());
                    g.vertices.push(DualVertex { curve: c.id, path: path.clone(), self_int: c.self_int });
                    mine.push(path);
                }
            }
            instances.push(mine);
        }
        for &(x, y) in &tree.edges {
            let (deep, shallow) = if instances[x][0].len() >= instances[y][0].len() { (x, y) } else { (y, x) };
            for path in &instances[deep] {
                let sp = instances[shallow]
                    .iter()
                    .find(|s| path.starts_with(s))
                    .expect("intersecting curves lie on one ancestry line");
                g.edges.push((index[&(shallow, sp.clone())], index[&(deep, path.clone())]));
            }
        }
        for a in &tree.arrows {
            match a.curve {
                None => {
                    for _ in 0..a.copies {
                        g.arrows.push(DualArrow { at: None, label: a.label, mult: None });
                    }
                }
                Some(c) => {
                    for path in &instances[c] {
                        for _ in 0..a.copies {
                            g.arrows.push(DualArrow {
                                at: Some(index[&(c, path.clone())]),
                                label: a.label,
                                mult: None,
                            });
                        }
                    }
                }
            }
        }
        g
    }

    /// Number of incident edge ends plus arrows.
    pub fn valency(&self, v: usize) -> usize {
        let e = self
            .edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum::<usize>();
        e + self.arrows.iter().filter(|a| a.at == Some(v)).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    /// Intersection matrix: self-intersections on the diagonal, edge counts
    /// off it.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.self_int;
        }
        for &(a, b) in &self.edges {
            if a != b {
                m[a][b] += 1;
                m[b][a] += 1;
            } else {
                m[a][a] += 2;
            }
        }
        m
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        if self.edges.len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Negative definiteness by elimination without pivoting: all pivots of a
/// negative definite symmetric matrix are negative.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    for k in 0..n {
        if !a[k][k].is_negative() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}
