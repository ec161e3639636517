//! Valuations of functions of `(x, y, z)` along the curves of the
//! resolution of the surface.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::resolve::{mult_along_poly, BlowupTree, Poly};
use crate::scalar::AlgNum;

use super::{chart_images, to_alg, RatPoly, SISPresentation, SingPoint};

/// `(num, den)` with `num / den = G(h, h·v', h·w')` in the chart given by
/// `img`, where `h = germ / unit` is the chart coordinate restricted to the
/// strict transform.
pub(crate) fn pullback(img: &[Poly; 3], germ: &Poly, unit: &Poly, g: &RatPoly) -> Result<(Poly, Poly)> {
    if g.is_zero() {
        return Err(Error::ZeroOnComponent);
    }
    let parts = g.homogeneous_parts();
    let top = *parts.keys().last().expect("nonzero");
    let vars = germ.vars().clone();
    let mut gp = vec![MPoly::one(&vars)];
    let mut up = vec![MPoly::one(&vars)];
    for _ in 0..top {
        gp.push(&gp[gp.len() - 1] * germ);
        up.push(&up[up.len() - 1] * unit);
    }
    let mut num = MPoly::zero(&vars);
    for (&m, gm) in &parts {
        let t = to_alg(gm).compose(img);
        num = &num + &(&(&t * &gp[m as usize]) * &up[(top - m) as usize]);
    }
    if num.is_zero() {
        return Err(Error::ZeroOnComponent);
    }
    Ok((num, up[top as usize].clone()))
}

/// Largest `k` with `b^k | p`, and the cofactor.
pub(crate) fn strip(p: &Poly, b: &Poly) -> (i64, Poly) {
    let mut k = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.div_exact(b) {
        cur = q;
        k += 1;
    }
    (k, cur)
}

/// Splits a pulled-back numerator at a singular point into the powers of
/// the tangent-cone branches and the strict transform.
pub(crate) fn split_at(p: &SingPoint, num: &Poly) -> (Vec<i64>, Poly) {
    let mut rest = num.clone();
    let mut nus = Vec::with_capacity(p.branches.len());
    for b in &p.branches {
        let (k, q) = strip(&rest, b);
        nus.push(k);
        rest = q;
    }
    (nus, rest)
}

/// Valuation of `G` along every curve class of the local tree at `p`.
pub(crate) fn local_valuations(p: &SingPoint, tree: &BlowupTree, g: &RatPoly) -> Result<Vec<i64>> {
    let (num, _) = pullback(&p.chart_images(), &p.germ, &p.unit, g)?;
    let (nus, rest) = split_at(p, &num);
    tree.curves
        .iter()
        .map(|c| {
            let s: i64 = nus.iter().zip(&c.mults).map(|(n, m)| n * m).sum();
            Ok(s + mult_along_poly(tree, c.id, &rest)?)
        })
        .collect()
}

/// Valuation of `G` along the Ⓛ-curve of component `comp`.
pub(crate) fn l_valuation(s: &SISPresentation, comp: usize, g: &RatPoly) -> Result<i64> {
    let cp = &s.components[comp].poly;
    // any chart whose coordinate is not the component itself
    let chart = (0..3)
        .find(|&k| !(cp.num_terms() == 1 && cp.degree_in(k) == Some(1)))
        .expect("a line is one coordinate at most");
    let mut coords = [AlgNum::zero(), AlgNum::zero(), AlgNum::zero()];
    coords[chart] = AlgNum::one();
    let img = chart_images(chart, &coords);
    let germ = to_alg(&s.f).compose(&img);
    let unit = to_alg(&s.g).compose(&img);
    let branch = to_alg(cp).compose(&img);
    let (num, den) = pullback(&img, &germ, &unit, g)?;
    Ok(strip(&num, &branch).0 - strip(&den, &branch).0)
}
