//! Isomorphism of decorated graphs by colour refinement and backtracking.

use std::collections::BTreeMap;

use crate::scalar::Rat;
use crate::sis::DecoratedGraph;

/// Everything attached to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    is_l: bool,
    self_int: i64,
    rate: Option<Rat>,
    mult: Vec<(String, i64)>,
    loops: usize,
    arrows: Vec<Option<i64>>,
}

fn label(g: &DecoratedGraph, v: usize) -> Label {
    let d = &g.vertices[v];
    let mut arrows: Vec<Option<i64>> = g.arrows.iter().filter(|a| a.at == Some(v)).map(|a| a.mult).collect();
    arrows.sort();
    Label {
        is_l: d.is_l,
        self_int: d.self_int,
        rate: d.rate.clone(),
        mult: d.mult.iter().map(|(k, x)| (k.clone(), *x)).collect(),
        loops: g.edges.iter().filter(|&&(a, b)| a == v && b == v).count(),
        arrows,
    }
}

/// Number of edges between each pair of distinct vertices.
fn edge_counts(g: &DecoratedGraph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(a, b) in &g.edges {
        if a != b {
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    m
}

fn adjacency(g: &DecoratedGraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); g.vertices.len()];
    for (&(a, b), &k) in &edge_counts(g) {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    adj
}

/// Own colour and sorted (neighbour colour, edge count) pairs.
type Signature = (usize, Vec<(usize, usize)>);

/// Stable colours of the vertices of several graphs, refined jointly so
/// that equal colours mean equal refined signatures across the graphs.
pub(crate) fn refine(graphs: &[&DecoratedGraph]) -> Vec<Vec<usize>> {
    let labels: Vec<Vec<Label>> = graphs
        .iter()
        .map(|g| (0..g.vertices.len()).map(|v| label(g, v)).collect())
        .collect();
    let adj: Vec<_> = graphs.iter().map(|g| adjacency(g)).collect();
    let mut colors = rank(&labels);
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<Vec<Signature>> = colors
            .iter()
            .zip(&adj)
            .map(|(c, a)| {
                (0..c.len())
                    .map(|v| {
                        let mut nb: Vec<(usize, usize)> = a[v].iter().map(|&(u, k)| (c[u], k)).collect();
                        nb.sort();
                        (c[v], nb)
                    })
                    .collect()
            })
            .collect();
        let next = rank(&sigs);
        let n = count_classes(&next);
        colors = next;
        if n == classes {
            return colors;
        }
        classes = n;
    }
}

fn rank<T: Ord + Clone>(items: &[Vec<T>]) -> Vec<Vec<usize>> {
    let mut all: Vec<&T> = items.iter().flatten().collect();
    all.sort();
    all.dedup();
    items
        .iter()
        .map(|g| g.iter().map(|x| all.binary_search(&x).expect("present")).collect())
        .collect()
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort();
    all.dedup();
    all.len()
}

/// A bijection `φ` from the vertices of `g1` to those of `g2` preserving
/// self-intersections, Ⓛ-flags, rates, multiplicities, arrows and edge
/// multiplicities, if one exists.
pub fn isomorphism(g1: &DecoratedGraph, g2: &DecoratedGraph) -> Option<Vec<usize>> {
    let n = g1.vertices.len();
    if n != g2.vertices.len() || g1.edges.len() != g2.edges.len() || g1.arrows.len() != g2.arrows.len() {
        return None;
    }
    let free = |g: &DecoratedGraph| {
        let mut v: Vec<Option<i64>> = g.arrows.iter().filter(|a| a.at.is_none()).map(|a| a.mult).collect();
        v.sort();
        v
    };
    if free(g1) != free(g2) {
        return None;
    }
    let colors = refine(&[g1, g2]);
    let (c1, c2) = (&colors[0], &colors[1]);
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort();
    h2.sort();
    if h1 != h2 {
        return None;
    }
    let e1 = edge_counts(g1);
    let e2 = edge_counts(g2);
    let order = search_order(g1, c1);
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, c1, c2, &e1, &e2, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

/// Whether the two graphs are isomorphic as decorated graphs.
pub fn isomorphic(g1: &DecoratedGraph, g2: &DecoratedGraph) -> bool {
    isomorphism(g1, g2).is_some()
}

/// Breadth-first from the rarest colour, so that each vertex after the first
/// of its component has a mapped neighbour.
fn search_order(g: &DecoratedGraph, colors: &[usize]) -> Vec<usize> {
    let n = g.vertices.len();
    let mut freq = BTreeMap::new();
    for &c in colors {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let adj = adjacency(g);
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (freq[&colors[v]], colors[v], v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            let mut nb: Vec<usize> = adj[v].iter().map(|&(u, _)| u).filter(|&u| !seen[u]).collect();
            nb.sort_by_key(|&u| (freq[&colors[u]], colors[u], u));
            for u in nb {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    k: usize,
    order: &[usize],
    c1: &[usize],
    c2: &[usize],
    e1: &BTreeMap<(usize, usize), usize>,
    e2: &BTreeMap<(usize, usize), usize>,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for w in 0..c2.len() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        let ok = order[..k].iter().all(|&u| {
            let a = e1.get(&(u.min(v), u.max(v))).copied().unwrap_or(0);
            let pu = phi[u];
            let b = e2.get(&(pu.min(w), pu.max(w))).copied().unwrap_or(0);
            a == b
        });
        if !ok {
            continue;
        }
        phi[v] = w;
        used[w] = true;
        if extend(k + 1, order, c1, c2, e1, e2, phi, used) {
            return true;
        }
        used[w] = false;
    }
    phi[v] = usize::MAX;
    false
}

/// Deterministic vertex order: Ⓛ-vertices first, then by self-intersection,
/// rate and neighbourhood degrees, ties broken by refined colour and then
/// by the given order. Returns the old index of each new position.
pub fn canonical_order(g: &DecoratedGraph) -> Vec<usize> {
    let colors = refine(&[g]).remove(0);
    let adj = adjacency(g);
    let deg = |v: usize| g.neighbors(v).len();
    let mut idx: Vec<usize> = (0..g.vertices.len()).collect();
    idx.sort_by_cached_key(|&v| {
        let d = &g.vertices[v];
        let mut nd: Vec<usize> = adj[v].iter().flat_map(|&(u, k)| std::iter::repeat_n(deg(u), k)).collect();
        nd.sort();
        (!d.is_l, d.self_int, d.rate.clone(), nd, colors[v], v)
    });
    idx
}

/// Renumbers the vertices of `g` by `order` (old index per new position)
/// and sorts edges and arrows.
pub fn permute(g: &DecoratedGraph, order: &[usize]) -> DecoratedGraph {
    let mut new_of = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (new_of[a], new_of[b]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort();
    let mut arrows = g.arrows.clone();
    for a in &mut arrows {
        a.at = a.at.map(|x| new_of[x]);
    }
    arrows.sort_by_key(|a| (a.at, a.mult));
    DecoratedGraph { vertices: order.iter().map(|&o| g.vertices[o].clone()).collect(), edges, arrows }
}
