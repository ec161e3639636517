//! Iterated point blow-ups of a plane-curve germ with full bookkeeping.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{BlowupTree, Curve, PointKey, TreeArrow};
use crate::error::{Error, Result};
use crate::poly::{factor_over, MPoly, UPoly, Vars};
use crate::scalar::{extend_field, AlgNum, FieldCtx};

pub type Poly = MPoly<AlgNum>;

/// Local chart variables `(a, b)`.
pub fn ab_vars() -> Vars {
    Vars::new(&["a", "b"])
}

/// Hard stop against runaway resolutions.
const MAX_BLOWUPS: usize = 400;

struct PointState {
    ctx: FieldCtx,
    /// Curve `{a = 0}` through the point, if any.
    ax_a: Option<usize>,
    /// Curve `{b = 0}` through the point, if any.
    ax_b: Option<usize>,
    /// `(v, w)` as polynomials in the local coordinates.
    phi: [Poly; 2],
    strict: Vec<Poly>,
    /// Curve whose blow-up produced this point, `None` at the root.
    parent: Option<usize>,
    copies: usize,
    address: Vec<PointKey>,
}

enum Decision {
    Done,
    Arrow(usize),
    Blow,
}

fn decide(st: &PointState, root: bool) -> Decision {
    let mut total = 0u32;
    let mut through = None;
    for (i, s) in st.strict.iter().enumerate() {
        if s.constant_term().is_zero() {
            let o = s.order_at_origin().expect("nonzero strict transform");
            total += o;
            through = Some(i);
        }
    }
    if total == 0 {
        return Decision::Done;
    }
    if total >= 2 {
        return Decision::Blow;
    }
    let i = through.expect("one branch");
    if root {
        return Decision::Arrow(i);
    }
    let s = &st.strict[i];
    match (st.ax_a, st.ax_b) {
        (Some(_), Some(_)) => Decision::Blow,
        (Some(_), None) => {
            // transverse to {a = 0} iff s(0, b) has a simple zero
            if s.coeff(&vec![0, 1]).is_zero() {
                Decision::Blow
            } else {
                Decision::Arrow(i)
            }
        }
        (None, Some(_)) => {
            if s.coeff(&vec![1, 0]).is_zero() {
                Decision::Blow
            } else {
                Decision::Arrow(i)
            }
        }
        (None, None) => Decision::Blow,
    }
}

fn key_order(a: &PointKey, b: &PointKey) -> Ordering {
    fn rank(k: &PointKey) -> (u8, usize, String) {
        match k {
            PointKey::Origin => (0, 0, String::new()),
            PointKey::Root(q) => (1, q.deg(), q.to_string()),
            PointKey::Infinity => (2, 0, String::new()),
        }
    }
    rank(a).cmp(&rank(b))
}

/// Resolves the germs `labels` (polynomials in two variables over `ctx`)
/// at the origin.
pub fn resolve_labels(ctx: &FieldCtx, labels: &[Poly]) -> Result<BlowupTree> {
    let vars = ab_vars();
    let product = labels.iter().fold(MPoly::one(&vars), |acc, l| &acc * &l.with_vars(&vars));
    if product.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !super::is_squarefree(&product)? {
        return Err(Error::NonReduced);
    }
    resolve_capped(ctx, labels, MAX_BLOWUPS)?
        .ok_or_else(|| Error::FieldExtensionFailure("blow-up limit reached".into()))
}

/// Like [`resolve_labels`] for labels that are only known to be reduced
/// near the origin; `None` once more than `cap` curve classes are needed.
pub(crate) fn resolve_capped(ctx: &FieldCtx, labels: &[Poly], cap: usize) -> Result<Option<BlowupTree>> {
    let vars = ab_vars();
    let labels: Vec<Poly> = labels.iter().map(|l| l.with_vars(&vars)).collect();
    if labels.iter().any(|l| l.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let mut tree = BlowupTree {
        ctx: ctx.clone(),
        labels: labels.clone(),
        curves: Vec::new(),
        edges: Vec::new(),
        arrows: Vec::new(),
    };
    let root = PointState {
        ctx: ctx.clone(),
        ax_a: None,
        ax_b: None,
        phi: [MPoly::var(&vars, 0), MPoly::var(&vars, 1)],
        strict: labels,
        parent: None,
        copies: 1,
        address: Vec::new(),
    };
    match decide(&root, true) {
        Decision::Done => return Ok(Some(tree)),
        Decision::Arrow(i) => {
            tree.arrows.push(TreeArrow { curve: None, label: i, copies: 1 });
            return Ok(Some(tree));
        }
        Decision::Blow => {}
    }
    let mut stack = vec![root];
    while let Some(st) = stack.pop() {
        if tree.curves.len() >= cap {
            return Ok(None);
        }
        let children = blow_up(&mut tree, st)?;
        // push in reverse so points are processed in key order
        for child in children.into_iter().rev() {
            match decide(&child, false) {
                Decision::Done => {}
                Decision::Arrow(i) => tree.arrows.push(TreeArrow {
                    curve: child.parent,
                    label: i,
                    copies: child.copies,
                }),
                Decision::Blow => stack.push(child),
            }
        }
    }
    Ok(Some(tree))
}

fn mono_map(vars: &Vars, a_exp: (u32, u32), b_exp: (u32, u32)) -> [Poly; 2] {
    let one = AlgNum::one();
    [
        MPoly::monomial(vars, one.clone(), vec![a_exp.0, a_exp.1]),
        MPoly::monomial(vars, one, vec![b_exp.0, b_exp.1]),
    ]
}

fn strict_in(p: &Poly, map: &[Poly; 2], var: usize, ord: u32) -> Poly {
    p.compose(map).div_var_pow(var, ord)
}

/// Blows up the origin of `st`, records the new curve and returns the
/// points of the new curve that carry strict transforms.
fn blow_up(tree: &mut BlowupTree, st: PointState) -> Result<Vec<PointState>> {
    let vars = ab_vars();
    let id = tree.curves.len();
    let orders: Vec<u32> = st
        .strict
        .iter()
        .map(|s| if s.constant_term().is_zero() { s.order_at_origin().unwrap_or(0) } else { 0 })
        .collect();
    let mults: Vec<i64> = (0..st.strict.len())
        .map(|i| {
            let ax = |c: Option<usize>| c.map_or(0, |c| tree.curves[c].mults[i]);
            ax(st.ax_a) + ax(st.ax_b) + orders[i] as i64
        })
        .collect();

    // chart 1: (a, b) = (a, a·b), E = {a = 0}
    let c1 = mono_map(&vars, (1, 0), (1, 1));
    // chart 2: (a, b) = (a·b, b), E = {b = 0}
    let c2 = mono_map(&vars, (1, 1), (0, 1));
    let phi1 = [st.phi[0].compose(&c1), st.phi[1].compose(&c1)];

    let instances = st.parent.map_or(1, |p| tree.curves[p].instances) * st.copies;
    for ax in [st.ax_a, st.ax_b].into_iter().flatten() {
        // each instance of the axis carries this many conjugate centers
        let per = instances / tree.curves[ax].instances;
        tree.curves[ax].self_int -= per as i64;
    }
    match (st.ax_a, st.ax_b) {
        (Some(x), Some(y)) => {
            tree.edges.retain(|&(p, q)| !((p == x && q == y) || (p == y && q == x)));
            tree.edges.push((x, id));
            tree.edges.push((y, id));
        }
        (Some(x), None) | (None, Some(x)) => tree.edges.push((x, id)),
        (None, None) => {}
    }
    tree.curves.push(Curve {
        id,
        self_int: -1,
        parent: st.parent,
        copies: st.copies,
        instances,
        ctx: st.ctx.clone(),
        address: st.address.clone(),
        chart: phi1.clone(),
        mults,
        orders: orders.clone(),
    });

    let strict1: Vec<Poly> = st
        .strict
        .iter()
        .zip(&orders)
        .map(|(s, &o)| strict_in(s, &c1, 0, o))
        .collect();

    // points of E in chart 1 are the roots of Π strict(0, b)
    let mut restriction = UPoly::one();
    let mut deficit = false;
    for (s, &o) in strict1.iter().zip(&orders) {
        if o == 0 {
            continue;
        }
        let r = s.specialize(0, &AlgNum::zero()).to_upoly(1).expect("univariate in b");
        if (r.deg() as u32) < o {
            deficit = true;
        }
        restriction = &restriction * &r;
    }
    let mut keys: Vec<PointKey> = Vec::new();
    if restriction.deg() > 0 {
        for (q, _) in factor_over(&st.ctx, &restriction)? {
            if q.deg() == 1 && q.coeff(0).is_zero() {
                keys.push(PointKey::Origin);
            } else {
                keys.push(PointKey::Root(q));
            }
        }
    }
    if deficit {
        keys.push(PointKey::Infinity);
    }
    keys.sort_by(key_order);

    let mut out = Vec::new();
    for key in keys {
        let mut address = st.address.clone();
        address.push(key.clone());
        let child = match &key {
            PointKey::Origin => PointState {
                ctx: st.ctx.clone(),
                ax_a: Some(id),
                ax_b: st.ax_b,
                phi: phi1.clone(),
                strict: strict1.clone(),
                parent: Some(id),
                copies: 1,
                address,
            },
            PointKey::Infinity => {
                let strict2 = st
                    .strict
                    .iter()
                    .zip(&orders)
                    .map(|(s, &o)| strict_in(s, &c2, 1, o))
                    .collect();
                PointState {
                    ctx: st.ctx.clone(),
                    ax_a: st.ax_a,
                    ax_b: Some(id),
                    phi: [st.phi[0].compose(&c2), st.phi[1].compose(&c2)],
                    strict: strict2,
                    parent: Some(id),
                    copies: 1,
                    address,
                }
            }
            PointKey::Root(q) => {
                let (ctx, c, copies) = if q.deg() == 1 {
                    (st.ctx.clone(), -q.coeff(0), 1)
                } else {
                    let k = extend_field(&st.ctx, q).map_err(|e| match e {
                        Error::TowerDepthExceeded { cap } => Error::FieldExtensionFailure(format!(
                            "tower depth cap {cap} exceeded at a point of degree {}",
                            q.deg()
                        )),
                        other => other,
                    })?;
                    let t = k.generator().expect("proper extension");
                    (k, t, q.deg())
                };
                let shift = [
                    MPoly::var(&vars, 0),
                    &MPoly::var(&vars, 1) + &MPoly::constant(&vars, c),
                ];
                PointState {
                    ctx,
                    ax_a: Some(id),
                    ax_b: None,
                    phi: [phi1[0].compose(&shift), phi1[1].compose(&shift)],
                    strict: strict1.iter().map(|s| s.compose(&shift)).collect(),
                    parent: Some(id),
                    copies,
                    address,
                }
            }
        };
        out.push(child);
    }
    Ok(out)
}
