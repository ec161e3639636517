//! Univariate factorization over ℚ and over algebraic extension towers,
//! plus bivariate factorization over ℚ.

mod bivariate;
mod modp;
mod zassenhaus;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::scalar::{AlgNum, Field, FieldCtx, Rat};

pub use bivariate::factor_bivariate;

/// Largest degree over ℚ handed to the modular factorizer.
pub const FACTOR_DEGREE_CAP: usize = 24;

/// Monic irreducible factors over `ctx` with multiplicities; the product of
/// `lc(p)` and the factors is `p`.
pub fn factor_over(ctx: &FieldCtx, p: &UPoly<AlgNum>) -> Result<Vec<(UPoly<AlgNum>, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeffs().iter().any(|c| !ctx.contains(c)) {
        return Err(Error::ContextMismatch);
    }
    let mut out = Vec::new();
    for (a, mult) in p.squarefree_decomposition() {
        for g in factor_squarefree_over(ctx, &a)? {
            out.push((g, mult));
        }
    }
    Ok(out)
}

/// Rational convenience wrapper around [`factor_over`].
pub fn factor_rat(p: &UPoly<Rat>) -> Result<Vec<(UPoly<Rat>, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (a, mult) in p.squarefree_decomposition() {
        for g in factor_squarefree_rat(&a)? {
            out.push((g, mult));
        }
    }
    Ok(out)
}

/// Whether `p` (of positive degree) is irreducible over `ctx`.
pub fn is_irreducible(ctx: &FieldCtx, p: &UPoly<AlgNum>) -> Result<bool> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let f = factor_over(ctx, p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

fn to_rat_poly(p: &UPoly<AlgNum>) -> UPoly<Rat> {
    UPoly::new(
        p.coeffs()
            .iter()
            .map(|c| c.as_rat().expect("rational coefficient").clone())
            .collect(),
    )
}

fn from_rat_poly(p: &UPoly<Rat>) -> UPoly<AlgNum> {
    UPoly::new(p.coeffs().iter().map(|c| AlgNum::from_rat(c.clone())).collect())
}

/// Integer polynomial with the same roots (denominators cleared).
pub(crate) fn clear_denominators(p: &UPoly<Rat>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
        .collect()
}

fn factor_squarefree_rat(a: &UPoly<Rat>) -> Result<Vec<UPoly<Rat>>> {
    let n = a.deg();
    if n <= 1 {
        return Ok(vec![a.monic()]);
    }
    if n > FACTOR_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree: n, cap: FACTOR_DEGREE_CAP });
    }
    // pull out powers of t so the modular code sees a nonzero constant term
    let mut out = Vec::new();
    let mut a = a.clone();
    if a.coeff(0).is_zero() {
        out.push(UPoly::var());
        a = a.div_exact(&UPoly::var()).expect("t divides");
        if a.deg() == 0 {
            return Ok(out);
        }
    }
    let z = clear_denominators(&a);
    for g in zassenhaus::factor_squarefree_z(&z) {
        let q = UPoly::new(g.into_iter().map(Rat::from_integer).collect());
        out.push(q.monic());
    }
    Ok(out)
}

fn factor_squarefree_over(ctx: &FieldCtx, a: &UPoly<AlgNum>) -> Result<Vec<UPoly<AlgNum>>> {
    if a.deg() <= 1 {
        return Ok(vec![a.monic()]);
    }
    if ctx.is_rationals() {
        let f = factor_squarefree_rat(&to_rat_poly(a))?;
        return Ok(f.iter().map(from_rat_poly).collect());
    }
    let total = a.deg() * ctx.degree();
    if total > FACTOR_DEGREE_CAP * 2 {
        return Err(Error::DegreeTooLarge { degree: total, cap: FACTOR_DEGREE_CAP * 2 });
    }
    let base = ctx.base();
    let alpha = ctx.generator().expect("extension");
    for s in shifts().take(16) {
        let sa = alpha.clone() * AlgNum::from_int(s);
        let qs = a.compose(&UPoly::new(vec![-sa.clone(), AlgNum::one()]));
        let n = norm(ctx, &qs)?;
        if !n.is_squarefree() {
            continue;
        }
        let nf = factor_over(&base, &n)?;
        if nf.len() == 1 {
            return Ok(vec![a.monic()]);
        }
        let back = UPoly::new(vec![sa, AlgNum::one()]);
        let mut out = Vec::new();
        for (ni, _) in nf {
            let g = UPoly::gcd(&qs, &ni);
            if g.degree().unwrap_or(0) > 0 {
                out.push(g.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::FieldExtensionFailure(format!(
        "no squarefree norm found for {}",
        a.to_string_var("t")
    )))
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 })
}

/// Norm from `ctx` down to its base: `Res_t(m(t), q(w)|_{α=t})`, computed by
/// evaluation at integer points and interpolation.
pub fn norm(ctx: &FieldCtx, q: &UPoly<AlgNum>) -> Result<UPoly<AlgNum>> {
    let m = ctx.minpoly().ok_or(Error::ContextMismatch)?;
    let d = q.deg() * m.deg();
    let mut xs = Vec::with_capacity(d + 1);
    let mut ys = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let x = AlgNum::from_int(j as i64);
        let v = q.eval(&x);
        let coords = UPoly::new(v.coords(ctx));
        let r = if coords.is_zero() {
            AlgNum::zero()
        } else {
            UPoly::resultant(&m, &coords)
        };
        xs.push(x);
        ys.push(r);
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through distinct nodes.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UPoly<F> {
    let n = xs.len();
    let mut dd: Vec<F> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = xs[i].clone() - xs[i - j].clone();
            dd[i] = num * den.inv().expect("distinct nodes");
        }
    }
    let mut p = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UPoly::linear_root(xs[i].clone())) + &UPoly::constant(dd[i].clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::extend_field;

    fn q(v: &[i64]) -> UPoly<AlgNum> {
        UPoly::new(v.iter().map(|&n| AlgNum::from_int(n)).collect())
    }

    fn expand(fs: &[(UPoly<AlgNum>, u32)]) -> UPoly<AlgNum> {
        fs.iter()
            .fold(UPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn t5_minus_1_over_q() {
        let f = q(&[-1, 0, 0, 0, 0, 1]);
        let fs = factor_over(&FieldCtx::rationals(), &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(q(&[-1, 1]), 1)));
        assert!(fs.contains(&(q(&[1, 1, 1, 1, 1]), 1)));
        assert_eq!(expand(&fs), f);
    }

    #[test]
    fn square_and_irreducible() {
        let fs = factor_over(&FieldCtx::rationals(), &q(&[0, 0, 1])).unwrap();
        assert_eq!(fs, vec![(q(&[0, 1]), 2)]);
        let fs = factor_over(&FieldCtx::rationals(), &q(&[-2, 0, 1])).unwrap();
        assert_eq!(fs, vec![(q(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn t2_minus_2_splits_over_sqrt2() {
        let k = extend_field(&FieldCtx::rationals(), &q(&[-2, 0, 1])).unwrap();
        let fs = factor_over(&k, &q(&[-2, 0, 1])).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(expand(&fs), q(&[-2, 0, 1]));
        let fs = factor_over(&k, &q(&[-3, 0, 1])).unwrap();
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn cyclotomic_splits_over_its_field() {
        let k = extend_field(&FieldCtx::rationals(), &q(&[1, 1, 1, 1, 1])).unwrap();
        let fs = factor_over(&k, &q(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(f, e)| f.deg() == 1 && *e == 1));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = q(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(AlgNum::from_int).collect();
        let ys: Vec<_> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn degree_cap_enforced() {
        let mut c = vec![0i64; 27];
        c[0] = 1;
        c[26] = 1;
        c[1] = 1;
        let err = factor_over(&FieldCtx::rationals(), &q(&c)).unwrap_err();
        assert!(matches!(err, Error::DegreeTooLarge { .. }));
    }
}
