//! Embedded resolution of plane-curve germs by point blow-ups.
//!
//! A [`BlowupTree`] records every exceptional curve once per Galois class of
//! centers; [`DualGraph::from_tree`] expands the classes into individual
//! curves.

mod engine;
mod graph;
mod intersect;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MPoly, RatFunc, UPoly};
use crate::scalar::{AlgNum, FieldCtx};

pub(crate) use engine::resolve_capped;
pub use engine::{ab_vars, resolve_labels, Poly};
pub use graph::{is_negative_definite, DualArrow, DualGraph, DualVertex};
pub use intersect::{intersection_mult, is_squarefree};

/// Position of a blow-up center on the previous exceptional curve, in the
/// coordinate `b` of the chart `(a, a·b)`: `Origin` is `b = 0`, `Root(q)` a
/// class of roots of the monic irreducible `q`, `Infinity` the point of the
/// other chart.
#[derive(Clone, Debug, PartialEq)]
pub enum PointKey {
    Origin,
    Infinity,
    Root(UPoly<AlgNum>),
}

#[derive(Clone, Debug)]
pub struct Curve {
    /// Index in birth order.
    pub id: usize,
    pub self_int: i64,
    /// Curve on which the center lay; `None` for the first curve.
    pub parent: Option<usize>,
    /// Number of conjugate centers per instance of the parent.
    pub copies: usize,
    /// Number of curves in the class after expansion.
    pub instances: usize,
    pub ctx: FieldCtx,
    pub address: Vec<PointKey>,
    /// `(v, w)` in the chart `(a, b)` where this curve is `{a = 0}`.
    pub chart: [Poly; 2],
    /// Multiplicity of each label's total transform along the curve.
    pub mults: Vec<i64>,
    /// Order of each label's strict transform at the blown-up center.
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeArrow {
    /// Curve met by the branch, `None` for a germ that needs no blow-up.
    pub curve: Option<usize>,
    pub label: usize,
    pub copies: usize,
}

#[derive(Clone, Debug)]
pub struct BlowupTree {
    pub ctx: FieldCtx,
    pub labels: Vec<Poly>,
    pub curves: Vec<Curve>,
    /// Intersections between curve classes.
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<TreeArrow>,
}

/// A reduced plane-curve germ at the origin.
#[derive(Clone, Debug)]
pub struct GermCurve {
    pub ctx: FieldCtx,
    pub h: Poly,
}

impl GermCurve {
    pub fn new(ctx: &FieldCtx, h: Poly) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if h.terms().any(|(_, c)| !ctx.contains(c)) {
            return Err(Error::ContextMismatch);
        }
        if !is_squarefree(&h)? {
            return Err(Error::NonReduced);
        }
        Ok(GermCurve { ctx: ctx.clone(), h })
    }
}

/// Minimal embedded resolution of a germ.
pub fn resolve_germ(c: &GermCurve) -> Result<(BlowupTree, DualGraph)> {
    if !c.h.constant_term().is_zero() {
        return Err(Error::CenterNotOnDivisor);
    }
    let tree = resolve_labels(&c.ctx, std::slice::from_ref(&c.h))?;
    let graph = DualGraph::from_tree(&tree);
    Ok((tree, graph))
}

/// Valuation of `g` along the exceptional curve `e`.
pub fn mult_along(tree: &BlowupTree, e: usize, g: &RatFunc<AlgNum>) -> Result<i64> {
    let curve = tree.curves.get(e).ok_or(Error::CurveUnknown(e))?;
    if g.num.is_zero() || g.den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(a_order(&curve.chart, &g.num) as i64 - a_order(&curve.chart, &g.den) as i64)
}

/// Polynomial convenience form of [`mult_along`].
pub fn mult_along_poly(tree: &BlowupTree, e: usize, g: &Poly) -> Result<i64> {
    mult_along(tree, e, &RatFunc::from_poly(g.clone()))
}

/// Lowest power of `a` in `g ∘ chart`, computed with a growing truncation.
fn a_order(chart: &[Poly; 2], g: &Poly) -> u32 {
    let vars = ab_vars();
    let g = g.with_vars(&vars);
    let mut n = 8u32;
    loop {
        let c = g.compose_truncated(chart, 0, n);
        if !c.is_zero() {
            return c.order_in(0).expect("nonzero");
        }
        n *= 2;
    }
}

/// Vertices of valency at least three (arrows included), plus the first
/// curve when the tangent cone of the germ has several distinct lines.
pub fn detect_nodes(graph: &DualGraph, germ: &Poly) -> Result<Vec<usize>> {
    let mut nodes: Vec<usize> = (0..graph.vertices.len())
        .filter(|&i| graph.valency(i) >= 3)
        .collect();
    if !graph.vertices.is_empty() && tangent_lines(germ)? >= 2 {
        // the first curve has a single instance
        if let Some(r) = graph.vertices.iter().position(|v| v.curve == 0) {
            if !nodes.contains(&r) {
                nodes.push(r);
            }
        }
    }
    nodes.sort_unstable();
    Ok(nodes)
}

/// Number of distinct lines in the tangent cone of a germ.
pub fn tangent_lines(germ: &Poly) -> Result<usize> {
    let t = germ.tangent_cone()?;
    let m = t.total_degree().unwrap_or(0);
    // dehomogenize at the first variable: T(1, s); lines at infinity come
    // from the drop in degree
    let vars = t.vars().clone();
    let one = MPoly::constant(&vars, AlgNum::from_int(1));
    let u = t
        .compose(&[one, MPoly::var(&vars, 1)])
        .to_upoly(1)
        .expect("univariate");
    let finite = if u.deg() > 0 { u.squarefree_part().deg() } else { 0 };
    let at_inf = usize::from((u.deg() as u32) < m);
    Ok(finite + at_inf)
}
