//! Factorization of squarefree integer polynomials: modular factorization,
//! Hensel lifting and recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PolyP};

pub type ZPoly = Vec<BigInt>;

fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

/// Exact division in ℤ[x], `None` if `d` does not divide `a`.
fn div_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    let lc = &d[dd];
    let mut r = a.clone();
    if r.len() < d.len() {
        return r.is_empty().then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (dd..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (c, rem) = r[k].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k - dd + j] -= &c * dc;
        }
        q[k - dd] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn to_modp(a: &ZPoly, k: &Fp) -> PolyP {
    let p = BigInt::from(k.p);
    let mut r: PolyP = a.iter().map(|c| c.mod_floor(&p).to_u64().expect("reduced")).collect();
    Fp::trim(&mut r);
    r
}

fn from_modp(a: &PolyP) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut r);
    r
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut r: ZPoly = a
        .iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect();
    trim(&mut r);
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `f = g·h (mod p^K)`, lifted linearly from a factorization mod `p`.
/// `h` is monic; `g` carries the leading coefficient.
fn hensel_pair(f: &ZPoly, g0: &PolyP, h0: &PolyP, k: &Fp, steps: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = k.xgcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    // s·g0 + t·h0 = 1: the correction to h uses s, to g uses t
    let p = BigInt::from(k.p);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let mut pk = p.clone();
    for _ in 1..steps {
        let diff: ZPoly = {
            let gh = mul(&g, &h);
            let n = f.len().max(gh.len());
            let mut d: ZPoly = (0..n)
                .map(|i| {
                    f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default()
                })
                .collect();
            trim(&mut d);
            d
        };
        let e: ZPoly = diff.iter().map(|c| c / &pk).collect();
        let e = to_modp(&e, k);
        let (q, r) = k.div_rem(&k.mul_poly(&s, &e), h0);
        let dg = k.add_poly(&k.mul_poly(&t, &e), &k.mul_poly(&q, g0));
        let upd = |a: &ZPoly, d: &PolyP| {
            let n = a.len().max(d.len());
            let mut r: ZPoly = (0..n)
                .map(|i| a.get(i).cloned().unwrap_or_default() + &pk * BigInt::from(*d.get(i).unwrap_or(&0)))
                .collect();
            trim(&mut r);
            r
        };
        g = upd(&g, &dg);
        h = upd(&h, &r);
        pk *= &p;
    }
    (reduce(&g, &pk), reduce(&h, &pk))
}

/// Lifts monic modular factors of `f` to monic factors mod `p^steps`.
fn hensel_multi(f: &ZPoly, facs: &[PolyP], k: &Fp, steps: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(k.p).pow(steps);
    if facs.len() == 1 {
        let lc = f.last().expect("nonzero").mod_floor(&pk);
        let inv = lc.modinv(&pk).expect("lc invertible");
        return vec![reduce(&f.iter().map(|c| c * &inv).collect(), &pk)];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let lc = to_modp(&vec![f.last().expect("nonzero").clone()], k)[0];
    let g0 = a.iter().fold(vec![lc], |acc, x| k.mul_poly(&acc, x));
    let h0 = b.iter().fold(vec![1], |acc, x| k.mul_poly(&acc, x));
    let (g, h) = hensel_pair(f, &g0, &h0, k, steps);
    let mut out = hensel_multi(&g, a, k, steps);
    out.extend(hensel_multi(&h, b, k, steps));
    out
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < s - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive polynomial of positive degree.
pub fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n == 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // choose the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in (3u64..).filter(|&p| is_prime(p)) {
        let k = Fp::new(p);
        let fp = to_modp(&f, &k);
        if fp.len() != f.len() {
            continue;
        }
        if k.gcd(&fp, &k.derivative(&fp)).len() != 1 {
            continue;
        }
        let facs = k.factor_squarefree(&k.monic(&fp), &mut rng);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((k, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (k, facs) = best.expect("some prime works");

    // coefficient bound for factors of lc·f
    let lc = f.last().expect("nonzero").abs();
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (&lc * &norm) << (n + 1);
    let p = BigInt::from(k.p);
    let mut steps = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        steps += 1;
    }
    let mut lifted = hensel_multi(&f, &facs, &k, steps);

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for sub in subsets(lifted.len(), s) {
            let lc_rest = rest.last().expect("nonzero").clone();
            let prod = sub
                .iter()
                .fold(vec![lc_rest.clone()], |acc, &i| reduce(&mul(&acc, &lifted[i]), &pk));
            let cand = primitive(&symmetric(&prod, &pk));
            if let Some(q) = div_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !sub.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(primitive(&rest));
    out
}
