//! Factorization of squarefree bivariate polynomials over ℚ by
//! specialization, Hensel lifting and recombination.

use num_traits::{One, Zero};

use super::factor_rat;
use crate::error::{Error, Result};
use crate::poly::{MPoly, UPoly, Vars};
use crate::scalar::Rat;

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Series in `t` with coefficients in ℚ[w], truncated below `t^n`.
type Series = Vec<UPoly<Rat>>;

fn series_mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut out = vec![UPoly::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= n {
                break;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

/// Irreducible factors over ℚ of a squarefree polynomial in two variables,
/// each normalized to leading coefficient 1 (graded lexicographic order).
/// Constants yield an empty list.
pub fn factor_bivariate(p: &MPoly<Rat>) -> Result<Vec<MPoly<Rat>>> {
    assert_eq!(p.nvars(), 2);
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.total_degree().expect("nonzero") as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    let vars = p.vars().clone();
    let tw = Vars::new(&["t", "w"]);
    let top = p.homogeneous_part(n as u32);

    // shear u -> u + s·w so that the w^n coefficient is a nonzero constant
    let s = (0i64..)
        .find(|&s| !top.eval(&[r(s), r(1)]).is_zero())
        .expect("top part is nonzero somewhere");
    for u0 in (0i64..40).map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }) {
        let t = MPoly::var(&tw, 0);
        let w = MPoly::var(&tw, 1);
        let img_u = &(&t + &MPoly::constant(&tw, r(u0))) + &w.scale(&r(s));
        let q = p.compose(&[img_u, w.clone()]);
        let lc = q.coeff(&vec![0, n as u32]);
        let q = q.scale(&lc.recip());
        let q0 = q.specialize(0, &Rat::zero()).to_upoly(1).expect("univariate in w");
        if q0.deg() != n || !q0.is_squarefree() {
            continue;
        }
        let factors = lift_and_recombine(&q, &q0, &tw)?;
        // undo t = u - u0 - s·w
        let u = MPoly::var(&vars, 0);
        let wv = MPoly::var(&vars, 1);
        let back_t = &(&u - &MPoly::constant(&vars, r(u0))) - &wv.scale(&r(s));
        return Ok(factors
            .into_iter()
            .map(|g| normalize(&g.compose(&[back_t.clone(), wv.clone()])))
            .collect());
    }
    Err(Error::NonReduced)
}

fn normalize(g: &MPoly<Rat>) -> MPoly<Rat> {
    let lc = g.leading_term().expect("nonzero").1.clone();
    g.scale(&lc.recip())
}

fn lift_and_recombine(q: &MPoly<Rat>, q0: &UPoly<Rat>, tw: &Vars) -> Result<Vec<MPoly<Rat>>> {
    let gs: Vec<UPoly<Rat>> = factor_rat(q0)?.into_iter().map(|(g, _)| g).collect();
    if gs.len() == 1 {
        return Ok(vec![q.clone()]);
    }
    let prec = q.degree_in(0).unwrap_or(0) as usize + 1;
    let target: Series = {
        let mut cs: Series = q
            .coefficients_in(0)
            .into_iter()
            .map(|c| c.to_upoly(1).expect("univariate in w"))
            .collect();
        cs.resize(prec, UPoly::zero());
        cs
    };
    // cofactor inverses for the partial-fraction solve
    let total = gs.iter().fold(UPoly::one(), |a, g| &a * g);
    let inv: Vec<UPoly<Rat>> = gs
        .iter()
        .map(|g| {
            let co = total.div_exact(g).expect("factor divides");
            co.inv_mod(g).expect("coprime factors")
        })
        .collect();
    let mut lifted: Vec<Series> = gs
        .iter()
        .map(|g| {
            let mut s = vec![UPoly::zero(); prec];
            s[0] = g.clone();
            s
        })
        .collect();
    for k in 1..prec {
        let prod = lifted
            .iter()
            .skip(1)
            .fold(lifted[0].clone(), |a, b| series_mul(&a, b, k + 1));
        let e = &target[k] - &prod[k];
        if e.is_zero() {
            continue;
        }
        for (i, g) in gs.iter().enumerate() {
            lifted[i][k] = (&e * &inv[i]).rem(g);
        }
    }

    let to_mpoly = |s: &Series| {
        let cs: Vec<MPoly<Rat>> = s.iter().map(|c| MPoly::from_upoly(tw, 1, c)).collect();
        MPoly::from_coefficients_in(tw, 0, &cs)
    };
    let mut rest = q.clone();
    let mut pool = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        for sub in subsets(pool.len(), size) {
            let prod = sub
                .iter()
                .skip(1)
                .fold(pool[sub[0]].clone(), |a, &i| series_mul(&a, &pool[i], prec));
            let cand = to_mpoly(&prod);
            if let Some(quot) = rest.div_exact(&cand) {
                out.push(cand);
                rest = quot;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !sub.contains(i))
                    .map(|(_, s)| s)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if !rest.is_constant() || !rest.constant_term().is_one() {
        out.push(rest);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn yz() -> Vars {
        Vars::new(&["y", "z"])
    }

    fn pp(s: &str) -> MPoly<Rat> {
        parse_poly(s, &yz(), &[]).unwrap()
    }

    #[test]
    fn two_cuspidal_cubics() {
        let a = pp("z + y^3");
        let b = pp("1 + z*y^2");
        let fs = factor_bivariate(&(&a * &b)).unwrap();
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(MPoly::one(&yz()), |acc, f| &acc * f);
        assert!((&a * &b).div_exact(&prod).unwrap().is_constant());
    }

    #[test]
    fn irreducible_cusp() {
        let fs = factor_bivariate(&pp("y^3 + z^2")).unwrap();
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn lines_through_origin() {
        let fs = factor_bivariate(&pp("(y - z)*(y + 2*z)*(3*y - z + 1)")).unwrap();
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn non_squarefree_rejected() {
        assert_eq!(factor_bivariate(&pp("(y - z^2)^2")), Err(Error::NonReduced));
    }
}
