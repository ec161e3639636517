//! Singular points of the projectivized tangent cone, one per Galois class.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{factor_over, factor_rat, MPoly, UPoly, Vars};
use crate::scalar::{extend_field, AlgNum, FieldCtx, Rat};

use super::{to_alg, RatPoly};

pub(super) struct RawPoint {
    pub ctx: FieldCtx,
    pub coords: [AlgNum; 3],
    pub chart: usize,
    pub class_size: usize,
}

fn alg_upoly(p: &UPoly<Rat>) -> UPoly<AlgNum> {
    p.map(|c| AlgNum::from_rat(c.clone()))
}

/// A root of the monic irreducible `q` over `ctx`, adjoining it if needed.
fn root_field(ctx: &FieldCtx, q: &UPoly<AlgNum>) -> Result<(FieldCtx, AlgNum)> {
    if q.deg() == 1 {
        return Ok((ctx.clone(), -(q.coeff(0) / q.coeff(1))));
    }
    let k = extend_field(ctx, q).map_err(|e| match e {
        Error::TowerDepthExceeded { cap } => Error::FieldExtensionFailure(format!(
            "tower depth cap {cap} exceeded at a singular point of degree {}",
            q.deg()
        )),
        other => other,
    })?;
    let t = k.generator().expect("proper extension");
    Ok((k, t))
}

fn gcd_all(polys: &[UPoly<AlgNum>]) -> UPoly<AlgNum> {
    polys.iter().fold(UPoly::zero(), |acc, p| UPoly::gcd(&acc, p))
}

/// All singular points of `{f = 0}` in ℙ², grouped into conjugacy classes.
/// `f` is squarefree and homogeneous in `(x, y, z)`.
pub(super) fn locate(f: &RatPoly) -> Result<Vec<RawPoint>> {
    let mut out = affine_points(f)?;
    out.extend(points_at_infinity(f)?);
    Ok(out)
}

/// Points with `x ≠ 0`, found in the chart `x = 1`.
fn affine_points(f: &RatPoly) -> Result<Vec<RawPoint>> {
    let vw = Vars::new(&["v", "w"]);
    let p = f.compose(&[MPoly::one(&vw), MPoly::var(&vw, 0), MPoly::var(&vw, 1)]);
    let pv = p.derivative(0);
    let pw = p.derivative(1);
    if pw.is_zero() {
        // p depends on v only and is squarefree: no singular points
        return Ok(Vec::new());
    }
    let r1 = p.resultant(&pw, 1).to_upoly(0).expect("univariate in v");
    let r = if pv.is_zero() {
        r1
    } else {
        let r2 = p.resultant(&pv, 1).to_upoly(0).expect("univariate in v");
        if r2.is_zero() { r1 } else { UPoly::gcd(&r1, &r2) }
    };
    if r.is_zero() {
        return Err(Error::TangentConeNotReduced);
    }
    if r.deg() == 0 {
        return Ok(Vec::new());
    }
    let (pa, pva, pwa) = (to_alg(&p), to_alg(&pv), to_alg(&pw));
    let mut out = Vec::new();
    for (q, _) in factor_rat(&r.squarefree_part())? {
        let (k, alpha) = root_field(&FieldCtx::rationals(), &alg_upoly(&q))?;
        let at = |m: &MPoly<AlgNum>| m.specialize(0, &alpha).to_upoly(1).expect("univariate in w");
        let g = gcd_all(&[at(&pa), at(&pva), at(&pwa)]);
        if g.is_zero() {
            return Err(Error::TangentConeNotReduced);
        }
        if g.deg() == 0 {
            continue;
        }
        for (rr, _) in factor_over(&k, &g)? {
            let (k2, beta) = root_field(&k, &rr)?;
            out.push(RawPoint {
                ctx: k2,
                coords: [AlgNum::one(), alpha.clone(), beta],
                chart: 0,
                class_size: q.deg() * rr.deg(),
            });
        }
    }
    Ok(out)
}

/// Points on the line `x = 0`: `[0 : 1 : γ]` and `[0 : 0 : 1]`.
fn points_at_infinity(f: &RatPoly) -> Result<Vec<RawPoint>> {
    let vw = Vars::new(&["v", "w"]);
    let zero = MPoly::zero(&vw);
    let one = MPoly::one(&vw);
    let polys: Vec<RatPoly> = std::iter::once(f.clone()).chain((0..3).map(|i| f.derivative(i))).collect();

    let mut out = Vec::new();
    let img = [zero.clone(), one.clone(), MPoly::var(&vw, 1)];
    let restricted: Vec<UPoly<Rat>> = polys
        .iter()
        .map(|p| p.compose(&img).to_upoly(1).expect("univariate"))
        .collect();
    let g = restricted.iter().fold(UPoly::zero(), |acc, p| UPoly::gcd(&acc, p));
    if g.is_zero() {
        return Err(Error::TangentConeNotReduced);
    }
    if g.deg() > 0 {
        for (r, _) in factor_rat(&g)? {
            let (k, gamma) = root_field(&FieldCtx::rationals(), &alg_upoly(&r))?;
            out.push(RawPoint {
                ctx: k,
                coords: [AlgNum::zero(), AlgNum::one(), gamma],
                chart: 1,
                class_size: r.deg(),
            });
        }
    }
    let pt = [Rat::zero(), Rat::zero(), Rat::one()];
    if polys.iter().all(|p| p.eval(&pt).is_zero()) {
        out.push(RawPoint {
            ctx: FieldCtx::rationals(),
            coords: [AlgNum::zero(), AlgNum::zero(), AlgNum::one()],
            chart: 2,
            class_size: 1,
        });
    }
    Ok(out)
}
