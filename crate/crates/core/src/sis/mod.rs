//! Superisolated surface singularities `f_d + f_{d+1} = 0`.
//!
//! One blow-up of the origin turns the surface into a smooth surface
//! meeting the exceptional plane along the tangent cone `C = {f_d = 0}`.
//! Near a singular point `p` of `C` the strict transform is the graph of
//! `x = f(1,v,w)/g(1,v,w)` over the `(v, w)` plane, so the resolution over
//! `p` is the plane resolution of the germ of `C` at `p`.

mod decorated;
mod points;
pub(crate) mod pullback;

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{factor_bivariate, MPoly, Vars};
use crate::resolve::{
    ab_vars, detect_nodes, mult_along_poly, resolve_labels, tangent_lines, BlowupTree, DualGraph, Poly,
};
use crate::scalar::{AlgNum, FieldCtx, Rat};

pub use decorated::{DArrow, DVertex, DecoratedGraph};

pub type RatPoly = MPoly<Rat>;

/// Ambient coordinates `(x, y, z)`.
pub fn xyz_vars() -> Vars {
    Vars::new(&["x", "y", "z"])
}

/// Local chart coordinates `(v, w)`.
pub fn vw_vars() -> Vars {
    Vars::new(&["v", "w"])
}

pub(crate) fn to_alg(p: &RatPoly) -> Poly {
    p.map_coeffs(|c| AlgNum::from_rat(c.clone()))
}

/// Images of `(x, y, z)` in the chart where coordinate `chart` is 1 and the
/// other two are `v`, `w` (in increasing order) translated by `coords`.
pub(crate) fn chart_images(chart: usize, coords: &[AlgNum; 3]) -> [Poly; 3] {
    let vars = vw_vars();
    let others = other_coords(chart);
    let mut img = [MPoly::zero(&vars), MPoly::zero(&vars), MPoly::zero(&vars)];
    img[chart] = MPoly::one(&vars);
    for (slot, &i) in others.iter().enumerate() {
        img[i] = &MPoly::var(&vars, slot) + &MPoly::constant(&vars, coords[i].clone());
    }
    img
}

fn other_coords(chart: usize) -> [usize; 2] {
    match chart {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// An irreducible component of the tangent cone over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub poly: RatPoly,
    pub degree: u32,
}

/// A singular point of `C`, representing a class of `class_size` conjugate
/// points.
#[derive(Clone, Debug)]
pub struct SingPoint {
    pub ctx: FieldCtx,
    /// Projective coordinates with `coords[chart] = 1`.
    pub coords: [AlgNum; 3],
    pub chart: usize,
    pub class_size: usize,
    /// `f` in the local chart, centered at the point.
    pub germ: Poly,
    /// `g` in the local chart; a unit at the point.
    pub unit: Poly,
    /// Components of `C` through the point.
    pub components: Vec<usize>,
    /// Their local equations, in the same order.
    pub branches: Vec<Poly>,
    pub ordinary_double: bool,
}

impl SingPoint {
    pub fn chart_images(&self) -> [Poly; 3] {
        chart_images(self.chart, &self.coords)
    }

    /// Names of the ambient coordinates playing the roles of `v` and `w`.
    pub fn local_axes(&self) -> [&'static str; 2] {
        let n = ["x", "y", "z"];
        let o = other_coords(self.chart);
        [n[o[0]], n[o[1]]]
    }
}

impl fmt::Display for SingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])?;
        if self.class_size > 1 {
            write!(f, " (+{} conjugates)", self.class_size - 1)?;
        }
        Ok(())
    }
}

/// A validated presentation: the surface is `f - g = 0` with `f = f_d` and
/// `g = -f_{d+1}`.
#[derive(Clone, Debug)]
pub struct SISPresentation {
    pub f: RatPoly,
    pub g: RatPoly,
    pub degree: u32,
    pub components: Vec<Component>,
    pub points: Vec<SingPoint>,
}

impl SISPresentation {
    /// Splits `F = f_d + f_{d+1}` into its homogeneous parts and validates.
    pub fn from_polynomial(big_f: &RatPoly) -> Result<Self> {
        let parts = big_f.homogeneous_parts();
        if parts.len() != 2 {
            return Err(Error::DegreeMismatch(format!(
                "expected two homogeneous parts of consecutive degrees, found {}",
                parts.len()
            )));
        }
        let mut it = parts.into_values();
        let fd = it.next().expect("two parts");
        let fd1 = it.next().expect("two parts");
        validate(&fd, &fd1)
    }

    pub fn f_next(&self) -> RatPoly {
        -&self.g
    }

    /// The defining polynomial `F = f_d + f_{d+1}`.
    pub fn polynomial(&self) -> RatPoly {
        &self.f - &self.g
    }
}

/// Checks the presentation and computes the singular points of `C`.
pub fn validate(fd: &RatPoly, fd1: &RatPoly) -> Result<SISPresentation> {
    if fd.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if fd.nvars() != 3 || fd1.nvars() != 3 {
        return Err(Error::DegreeMismatch("polynomials in x, y, z expected".into()));
    }
    let xyz = xyz_vars();
    let (fd, fd1) = (fd.with_vars(&xyz), fd1.with_vars(&xyz));
    if !fd.is_homogeneous() || !fd1.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = fd.total_degree().expect("nonzero");
    if d < 2 {
        return Err(Error::DegreeMismatch(format!("tangent cone of degree {d}, at least 2 required")));
    }
    match fd1.total_degree() {
        Some(e) if e == d + 1 => {}
        Some(e) => return Err(Error::DegreeMismatch(format!("degrees {d} and {e} are not consecutive"))),
        None => return Err(Error::DegreeMismatch(format!("missing part of degree {}", d + 1))),
    }
    let components = components_of(&fd)?;
    let g = -&fd1;
    let mut points = Vec::new();
    for raw in points::locate(&fd)? {
        let img = chart_images(raw.chart, &raw.coords);
        let germ = to_alg(&fd).compose(&img);
        let unit = to_alg(&g).compose(&img);
        debug_assert!(germ.constant_term().is_zero());
        let mut comps = Vec::new();
        let mut branches = Vec::new();
        for (i, c) in components.iter().enumerate() {
            let b = to_alg(&c.poly).compose(&img);
            if b.constant_term().is_zero() {
                comps.push(i);
                branches.push(b);
            }
        }
        let ordinary_double = germ.order_at_origin()? == 2 && tangent_lines(&germ)? == 2;
        let p = SingPoint {
            ctx: raw.ctx,
            coords: raw.coords,
            chart: raw.chart,
            class_size: raw.class_size,
            germ,
            unit,
            components: comps,
            branches,
            ordinary_double,
        };
        if p.unit.constant_term().is_zero() {
            return Err(Error::NotSuperisolated(p.to_string()));
        }
        points.push(p);
    }
    Ok(SISPresentation { f: fd, g, degree: d, components, points })
}

/// Irreducible factors of `f` over ℚ, as homogeneous polynomials.
fn components_of(f: &RatPoly) -> Result<Vec<Component>> {
    let xyz = f.vars().clone();
    let e = f.order_in(0)?;
    if e >= 2 {
        return Err(Error::TangentConeNotReduced);
    }
    let vw = vw_vars();
    let p = f.compose(&[MPoly::one(&vw), MPoly::var(&vw, 0), MPoly::var(&vw, 1)]);
    let factors = factor_bivariate(&p).map_err(|err| match err {
        Error::NonReduced => Error::TangentConeNotReduced,
        other => other,
    })?;
    let mut out: Vec<Component> = factors
        .iter()
        .map(|q| {
            let n = q.total_degree().expect("nonconstant");
            let poly = MPoly::from_terms(
                &xyz,
                q.terms().map(|(m, c)| (vec![n - m[0] - m[1], m[0], m[1]], c.clone())),
            );
            Component { poly, degree: n }
        })
        .collect();
    if e == 1 {
        out.push(Component { poly: MPoly::var(&xyz, 0), degree: 1 });
    }
    out.sort_by_key(|c| (c.degree, c.poly.to_string()));
    Ok(out)
}

/// The singular points of the tangent cone, one per conjugacy class.
pub fn tangent_cone_singularities(s: &SISPresentation) -> &[SingPoint] {
    &s.points
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Ordinary double points of `C` stay unresolved.
    Min,
    /// Every singular point of `C` is resolved.
    Inner,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Min => "min",
            Mode::Inner => "inner",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexOrigin {
    /// Ⓛ-vertex of a component.
    L(usize),
    /// Vertex `vertex` of the local dual graph at point class `point`,
    /// in conjugate copy `copy`.
    Local { point: usize, copy: usize, vertex: usize },
}

#[derive(Clone, Debug)]
pub struct LocalResolution {
    pub tree: BlowupTree,
    pub dual: DualGraph,
    /// Whether the local graph is part of Γ (ordinary double points are
    /// left out in min mode).
    pub glued: bool,
    /// Number of leading tree labels that are branches of `C`.
    pub branches: usize,
}

impl LocalResolution {
    /// Multiplicity of `f(1,v,w)` along curve class `c`.
    pub fn branch_mult(&self, c: usize) -> i64 {
        self.tree.curves[c].mults[..self.branches].iter().sum()
    }
}

/// The decorated graph together with the local data it was built from.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub mode: Mode,
    pub graph: DecoratedGraph,
    pub origins: Vec<VertexOrigin>,
    /// One per singular point class.
    pub locals: Vec<LocalResolution>,
}

impl Gamma {
    /// Multiplicity of `f(1,v,w)` along a local curve, 1 on Ⓛ-vertices.
    fn germ_mult(&self, v: usize) -> i64 {
        match &self.origins[v] {
            VertexOrigin::L(_) => 1,
            VertexOrigin::Local { point, vertex, .. } => {
                let loc = &self.locals[*point];
                loc.branch_mult(loc.dual.vertices[*vertex].curve)
            }
        }
    }

    /// Indices of the vertices that are copies of local vertex `vertex` at
    /// point class `point`.
    pub fn copies_of(&self, point: usize, vertex: usize) -> Vec<usize> {
        (0..self.origins.len())
            .filter(|&i| {
                matches!(self.origins[i], VertexOrigin::Local { point: p, vertex: v, .. } if p == point && v == vertex)
            })
            .collect()
    }
}

/// Assembles Γ: one Ⓛ-vertex per component, the local resolution graphs
/// glued along their arrows, and Ⓛ self-intersections.
pub fn build_gamma(s: &SISPresentation, mode: Mode) -> Result<Gamma> {
    let trees = s
        .points
        .iter()
        .map(|p| resolve_labels(&p.ctx, &p.branches))
        .collect::<Result<Vec<_>>>()?;
    assemble(s, mode, trees)
}

/// Builds Γ from one local tree per point class. The first labels of each
/// tree are the branches of `C` at the point; arrows of any further label
/// become arrows of Γ.
pub(crate) fn assemble(s: &SISPresentation, mode: Mode, trees: Vec<BlowupTree>) -> Result<Gamma> {
    let mut graph = DecoratedGraph::default();
    let mut origins = Vec::new();
    for i in 0..s.components.len() {
        graph.vertices.push(DVertex { is_l: true, component: Some(i), ..Default::default() });
        origins.push(VertexOrigin::L(i));
    }
    let mut locals = Vec::new();
    for (pi, (p, tree)) in s.points.iter().zip(trees).enumerate() {
        let dual = DualGraph::from_tree(&tree);
        let nb = p.branches.len();
        let glued = !(mode == Mode::Min && p.ordinary_double);
        for copy in 0..p.class_size {
            if !glued {
                let ends: Vec<usize> = dual
                    .arrows
                    .iter()
                    .filter(|a| a.label < nb)
                    .map(|a| p.components[a.label])
                    .collect();
                debug_assert_eq!(ends.len(), 2);
                graph.edges.push((ends[0], ends[1]));
                continue;
            }
            let off = graph.vertices.len();
            for (vi, v) in dual.vertices.iter().enumerate() {
                graph.vertices.push(DVertex { self_int: v.self_int, ..Default::default() });
                origins.push(VertexOrigin::Local { point: pi, copy, vertex: vi });
            }
            graph.edges.extend(dual.edges.iter().map(|&(a, b)| (off + a, off + b)));
            for a in &dual.arrows {
                let at = a.at.map(|x| off + x);
                if a.label < nb {
                    let at = at.expect("a singular point needs a blow-up");
                    graph.edges.push((p.components[a.label], at));
                } else {
                    graph.arrows.push(DArrow { at, mult: None });
                }
            }
        }
        locals.push(LocalResolution { tree, dual, glued, branches: nb });
    }
    let mut gamma = Gamma { mode, graph, origins, locals };
    l_node_self_int(&mut gamma, s)?;
    Ok(gamma)
}

/// Fills the Ⓛ self-intersections from the principal divisor of a generic
/// linear form ℓ, whose multiplicity is 1 on Ⓛ-curves and that of
/// `f(1,v,w)` on local curves, and whose strict transform meets each
/// Ⓛ-curve in as many points as the component's degree. The identity is
/// then checked on every vertex.
pub fn l_node_self_int(gamma: &mut Gamma, s: &SISPresentation) -> Result<()> {
    let n = gamma.graph.vertices.len();
    let m: Vec<i64> = (0..n).map(|v| gamma.germ_mult(v)).collect();
    let strict = |v: usize, g: &Gamma| match g.origins[v] {
        VertexOrigin::L(i) => s.components[i].degree as i64,
        _ => 0,
    };
    for li in 0..n {
        let VertexOrigin::L(_) = gamma.origins[li] else { continue };
        let mut adj = 0;
        let mut loops = 0;
        for &(a, b) in &gamma.graph.edges {
            if a == li && b == li {
                loops += 1;
            } else if a == li {
                adj += m[b];
            } else if b == li {
                adj += m[a];
            }
        }
        // m_L = 1, and a loop adds 2 to the diagonal
        gamma.graph.vertices[li].self_int = -(strict(li, gamma) + adj) - 2 * loops;
    }
    let mat = gamma.graph.intersection_matrix();
    for i in 0..n {
        let t: i64 = (0..n).map(|j| m[j] * mat[i][j]).sum::<i64>() + strict(i, gamma);
        if t != 0 {
            return Err(Error::InconsistentDivisor(format!("(ℓ)·E = {t} at vertex {i}")));
        }
    }
    for (v, mv) in gamma.graph.vertices.iter_mut().zip(m) {
        v.mult.insert("l".into(), mv);
    }
    Ok(())
}

/// Self-intersection of the strict transform of component `comp` in the
/// blown-up plane: `deg² - Σ m_p²` over the centers blown up in `gamma`.
pub fn plane_self_int(gamma: &Gamma, s: &SISPresentation, comp: usize) -> Result<i64> {
    let c = s.components.get(comp).ok_or(Error::ComponentUnknown(comp))?;
    let mut total = (c.degree as i64).pow(2);
    for (p, loc) in s.points.iter().zip(&gamma.locals) {
        if !loc.glued {
            continue;
        }
        let Some(li) = p.components.iter().position(|&k| k == comp) else { continue };
        for curve in &loc.tree.curves {
            let o = curve.orders[li] as i64;
            total -= (p.class_size * curve.instances) as i64 * o * o;
        }
    }
    Ok(total)
}

/// Number of linear forms `v + t·w` sampled for each rate.
pub const LINEAR_SAMPLES: usize = 3;

pub(crate) fn sample_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p: i64 = rng.gen_range(1..=97);
    let q: i64 = rng.gen_range(1..=13);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rat::new((sign * p).into(), q.into())
}

/// Multiplicity of a generic linear form along curve `c`: the minimum over
/// the samples, which at least two samples must attain.
fn generic_linear_mult(tree: &BlowupTree, c: usize, ts: &[Rat]) -> Result<i64> {
    let vars = ab_vars();
    let mut vals = Vec::with_capacity(ts.len());
    for t in ts {
        let l = &MPoly::var(&vars, 0) + &MPoly::var(&vars, 1).scale(&AlgNum::from_rat(t.clone()));
        vals.push(mult_along_poly(tree, c, &l)?);
    }
    let min = *vals.iter().min().expect("samples");
    if vals.iter().filter(|&&x| x == min).count() < 2 {
        return Err(Error::GenericityAlarm(format!("linear forms disagree along curve {c}: {vals:?}")));
    }
    Ok(min)
}

/// Annotates the nodes of every local graph with the inner rate
/// `m_E(l)/m_E(f̃) + 1`, and Ⓛ-vertices with rate 1.
pub fn inner_rates(gamma: &mut Gamma, s: &SISPresentation, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<Rat> = (0..LINEAR_SAMPLES).map(|_| sample_rat(&mut rng)).collect();
    for v in gamma.graph.vertices.iter_mut().filter(|v| v.is_l) {
        v.rate = Some(Rat::one());
    }
    for (pi, p) in s.points.iter().enumerate() {
        let loc = &gamma.locals[pi];
        if !loc.glued {
            continue;
        }
        for node in detect_nodes(&loc.dual, &p.germ)? {
            let c = loc.dual.vertices[node].curve;
            let mh = loc.branch_mult(c);
            let ml = generic_linear_mult(&loc.tree, c, &ts)?;
            let rate = Rat::new(ml.into(), mh.into()) + Rat::one();
            for i in gamma.copies_of(pi, node) {
                gamma.graph.vertices[i].rate = Some(rate.clone());
            }
        }
    }
    Ok(())
}

/// Valuation of `G(x, y, z)` along every vertex of Γ.
pub fn multiplicity_table(gamma: &Gamma, s: &SISPresentation, g: &RatPoly) -> Result<Vec<i64>> {
    let g = g.with_vars(&xyz_vars());
    let mut local: Vec<Option<Vec<i64>>> = vec![None; s.points.len()];
    let mut l_vals: Vec<Option<i64>> = vec![None; s.components.len()];
    let mut out = Vec::with_capacity(gamma.origins.len());
    for o in &gamma.origins {
        let val = match *o {
            VertexOrigin::L(i) => match l_vals[i] {
                Some(x) => x,
                None => {
                    let x = pullback::l_valuation(s, i, &g)?;
                    l_vals[i] = Some(x);
                    x
                }
            },
            VertexOrigin::Local { point, vertex, .. } => {
                let loc = &gamma.locals[point];
                if local[point].is_none() {
                    local[point] = Some(pullback::local_valuations(&s.points[point], &loc.tree, &g)?);
                }
                local[point].as_ref().expect("filled")[loc.dual.vertices[vertex].curve]
            }
        };
        out.push(val);
    }
    Ok(out)
}

/// Records a multiplicity table under `name` on the vertices of Γ.
pub fn annotate(gamma: &mut Gamma, name: &str, values: &[i64]) {
    for (v, &x) in gamma.graph.vertices.iter_mut().zip(values) {
        v.mult.insert(name.to_string(), x);
    }
}
