use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MPoly, UPoly};
use crate::scalar::AlgNum;

use super::Poly;

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
}

/// `p(v + s·w, w)`.
fn shear(p: &Poly, s: i64) -> Poly {
    let vars = p.vars().clone();
    let v = MPoly::var(&vars, 0);
    let w = MPoly::var(&vars, 1);
    let img = &v + &w.scale(&AlgNum::from_int(s));
    p.compose(&[img, w])
}

fn leading_ok(p: &Poly, s: i64) -> bool {
    let n = p.total_degree().unwrap_or(0);
    !p.homogeneous_part(n)
        .eval(&[AlgNum::from_int(s), AlgNum::from_int(1)])
        .is_zero()
}

/// Whether a polynomial in two variables has no repeated factor.
pub fn is_squarefree(h: &Poly) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = h.total_degree().unwrap_or(0) as i64;
    if n == 0 {
        return Ok(true);
    }
    let s = shifts().find(|&s| leading_ok(h, s)).expect("top part nonzero somewhere");
    let hs = shear(h, s);
    // a repeated factor is monic in w after the shear, so it survives every
    // specialization; the discriminant in v has degree below n(2n - 1)
    for v0 in 0..=(n * (2 * n - 1)) {
        let u = hs.specialize(0, &AlgNum::from_int(v0)).to_upoly(1).expect("univariate in w");
        if u.is_squarefree() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Intersection multiplicity at the origin of two germs without common
/// components.
pub fn intersection_mult(h1: &Poly, h2: &Poly) -> Result<u32> {
    if h1.is_zero() || h2.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h1.constant_term().is_zero() || !h2.constant_term().is_zero() {
        return Ok(0);
    }
    let h2 = h2.with_vars(h1.vars());
    for s in shifts().take(64) {
        if !leading_ok(h1, s) {
            continue;
        }
        let (a, b) = (shear(h1, s), shear(&h2, s));
        let zero = AlgNum::zero();
        let ra = a.specialize(0, &zero).to_upoly(1).expect("univariate");
        let rb = b.specialize(0, &zero).to_upoly(1).expect("univariate");
        let g = UPoly::gcd(&ra, &rb);
        if g.is_zero() {
            continue;
        }
        let k = g.deg();
        if g != UPoly::monomial(AlgNum::from_int(1), k) {
            continue;
        }
        let r = a.resultant(&b, 1);
        if r.is_zero() {
            return Err(Error::CommonComponent);
        }
        return r.order_at_origin();
    }
    Err(Error::CommonComponent)
}
