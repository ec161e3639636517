//! Dense polynomials over a small prime field, coefficients low first.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(a: &mut PolyP) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn add_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut r: PolyP = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn sub_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut r: PolyP = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn mul_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        Self::trim(&mut r);
        r
    }

    pub fn scale(&self, a: &PolyP, c: u64) -> PolyP {
        let mut r: PolyP = a.iter().map(|&x| self.mul(x, c)).collect();
        Self::trim(&mut r);
        r
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn div_rem(&self, a: &PolyP, d: &PolyP) -> (PolyP, PolyP) {
        let dd = d.len() - 1;
        let inv = self.inv(d[dd]);
        let mut r = a.clone();
        if r.len() <= dd {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = self.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = self.sub(r[idx], self.mul(c, dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &PolyP, d: &PolyP) -> PolyP {
        self.div_rem(a, d).1
    }

    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn xgcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        let mut r: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn powmod(&self, a: &PolyP, e: &BigUint, m: &PolyP) -> PolyP {
        let mut r = vec![1u64];
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            r = self.rem(&self.mul_poly(&r, &r), m);
            if e.bit(i) {
                r = self.rem(&self.mul_poly(&r, &base), m);
            }
        }
        r
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn ddf(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut i = 0;
        while f.len() > 2 * (i + 1) {
            i += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Equal-degree splitting (odd `p`).
    fn edf(&self, f: &PolyP, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.clone());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let mut a: PolyP = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            Self::trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.sub_poly(&self.powmod(&a, &e, f), &vec![1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                self.edf(&g, d, rng, out);
                self.edf(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree(&self, f: &PolyP, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            self.edf(&g, d, rng, &mut out);
        }
        out
    }
}
