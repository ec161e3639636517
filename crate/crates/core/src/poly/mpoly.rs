//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::scalar::Field;

/// Exponent vector.
pub type Mono = Vec<u32>;

/// Ordered variable names shared between polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// A polynomial: a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<F: Field> {
    vars: Vars,
    terms: BTreeMap<Mono, F>,
}

fn total(m: &Mono) -> u32 {
    m.iter().sum()
}

/// Graded lexicographic comparison, used for printing and leading terms.
fn grlex(a: &Mono, b: &Mono) -> Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

impl<F: Field> MPoly<F> {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: F) -> Self {
        Self::monomial(vars, c, vec![0; vars.len()])
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn monomial(vars: &Vars, c: F, exps: Mono) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { vars: vars.clone(), terms }
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, F::one(), e)
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Same polynomial in a ring with other variable names (same count).
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        MPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<MPoly<G>> {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())),
        )
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(total).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub fn order_at_origin(&self) -> Result<u32> {
        self.terms.keys().map(total).min().ok_or(Error::ZeroPolynomial)
    }

    /// Order in variable `i` (largest power of that variable dividing).
    pub fn order_in(&self, i: usize) -> Result<u32> {
        self.terms.keys().map(|m| m[i]).min().ok_or(Error::ZeroPolynomial)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| total(m) == k)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(total(m))
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_parts().len() <= 1
    }

    /// Lowest-degree homogeneous part.
    pub fn tangent_cone(&self) -> Result<Self> {
        Ok(self.homogeneous_part(self.order_at_origin()?))
    }

    /// Terms of total degree at most `n`.
    pub fn truncate(&self, n: u32) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| total(m) <= n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            out.add_term(e, c.clone() * F::from_i64(m[i] as i64));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = t * x.pow_u32(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share a ring.
    pub fn compose(&self, images: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        let mut cache: Vec<Vec<MPoly<F>>> = images.iter().map(|g| vec![MPoly::one(&target), g.clone()]).collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Like [`MPoly::compose`] but discards every term whose exponent in
    /// variable `var` of the target ring is at least `n`.
    pub fn compose_truncated(&self, images: &[MPoly<F>], var: usize, n: u32) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        let images: Vec<MPoly<F>> = images.iter().map(|g| g.truncate_in(var, n)).collect();
        let mut cache: Vec<Vec<MPoly<F>>> =
            images.iter().map(|g| vec![MPoly::one(&target), g.clone()]).collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i][cache[i].len() - 1].mul_truncated(&images[i], var, n);
                    cache[i].push(next);
                }
                t = t.mul_truncated(&cache[i][e as usize], var, n);
            }
            out = &out + &t;
        }
        out
    }

    /// Terms whose exponent in variable `var` is below `n`.
    pub fn truncate_in(&self, var: usize, n: u32) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| m[var] < n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Product with terms of exponent at least `n` in `var` discarded.
    pub fn mul_truncated(&self, o: &MPoly<F>, var: usize, n: u32) -> MPoly<F> {
        let mut out = MPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1[var] + m2[var] >= n {
                    continue;
                }
                let e: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Substitutes a polynomial for a single variable.
    pub fn substitute(&self, i: usize, q: &MPoly<F>) -> MPoly<F> {
        let images: Vec<_> = (0..self.nvars())
            .map(|j| if j == i { q.clone() } else { MPoly::var(&self.vars, j) })
            .collect();
        self.compose(&images)
    }

    /// Fixes variable `i` to the value `c` (the variable stays in the ring).
    pub fn specialize(&self, i: usize, c: &F) -> MPoly<F> {
        let mut out = MPoly::zero(&self.vars);
        for (m, x) in &self.terms {
            let mut e = m.clone();
            let k = std::mem::replace(&mut e[i], 0);
            out.add_term(e, x.clone() * c.pow_u32(k));
        }
        out
    }

    /// Coefficients with respect to variable `i`: `self = Σ_k c_k · x_i^k`,
    /// with each `c_k` free of `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(i).map_or(0, |d| d as usize + 1);
        let mut out = vec![MPoly::zero(&self.vars); d];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = std::mem::replace(&mut e[i], 0) as usize;
            out[k].add_term(e, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &Vars, i: usize, cs: &[MPoly<F>]) -> MPoly<F> {
        let mut out = MPoly::zero(vars);
        for (k, c) in cs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut e = m.clone();
                e[i] += k as u32;
                out.add_term(e, x.clone());
            }
        }
        out
    }

    /// Univariate view when only variable `i` occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly<F>> {
        let mut cs = Vec::new();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e != 0) {
                return None;
            }
            let k = m[i] as usize;
            if cs.len() <= k {
                cs.resize(k + 1, F::zero());
            }
            cs[k] = c.clone();
        }
        Some(UPoly::new(cs))
    }

    pub fn from_upoly(vars: &Vars, i: usize, p: &UPoly<F>) -> MPoly<F> {
        let mut out = MPoly::zero(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift_mono(&self, e: &Mono) -> Self {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Divides by `x_i^k`, which must divide.
    pub fn div_var_pow(&self, i: usize, k: u32) -> Self {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.clone();
            e[i] = e[i].checked_sub(k).expect("variable power divides");
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MPoly<F>) -> Option<MPoly<F>> {
        let (dm, dc) = d.leading_term()?;
        let dinv = dc.inv()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((rm, rc)) = r.leading_term() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Mono = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let c = rc.clone() * dinv.clone();
            let t = MPoly::monomial(&self.vars, c, e);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Resultant with respect to variable `i`, as the determinant of the
    /// Sylvester matrix computed by fraction-free elimination.
    pub fn resultant(&self, other: &MPoly<F>, i: usize) -> MPoly<F> {
        let a = self.coefficients_in(i);
        let b = other.coefficients_in(i);
        if a.is_empty() || b.is_empty() {
            return MPoly::zero(&self.vars);
        }
        let (m, n) = (a.len() - 1, b.len() - 1);
        if m == 0 && n == 0 {
            return MPoly::one(&self.vars);
        }
        if m == 0 {
            return a[0].pow(n as u32);
        }
        if n == 0 {
            return b[0].pow(m as u32);
        }
        let size = m + n;
        let zero = MPoly::zero(&self.vars);
        let mut mat = vec![vec![zero.clone(); size]; size];
        // row r of a-block: coefficients of x^(n-1-r)·a, highest degree first
        for r in 0..n {
            for (k, c) in a.iter().enumerate() {
                mat[r][r + m - k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in b.iter().enumerate() {
                mat[n + r][r + n - k] = c.clone();
            }
        }
        bareiss_det(mat, &self.vars)
    }
}

/// Determinant by Bareiss fraction-free elimination with exact division.
pub fn bareiss_det<F: Field>(mut mat: Vec<Vec<MPoly<F>>>, vars: &Vars) -> MPoly<F> {
    let n = mat.len();
    let mut sign = false;
    let mut prev = MPoly::one(vars);
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
                None => return MPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MPoly::zero(vars);
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

impl<F: Field> MPoly<F> {
    pub fn to_string_with(&self, coeff: impl Fn(&F) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        let mut s = String::new();
        for (idx, (m, c)) in ts.into_iter().enumerate() {
            let cs = coeff(c);
            let neg = cs.starts_with('-') && !cs.contains(['+', ' ']) && !cs[1..].contains('-');
            let body = if neg { cs[1..].to_string() } else { cs.clone() };
            let body = if body.contains(['+', '-', ' ']) { format!("({body})") } else { body };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&body);
                s.push('*');
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(|c| c.to_string()))
    }
}

impl<'a, F: Field> Add<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: &'a MPoly<F>) -> MPoly<F> {
        debug_assert_eq!(self.vars.len(), o.vars.len());
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &'a MPoly<F>) -> MPoly<F> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &'a MPoly<F>) -> MPoly<F> {
        let mut out = MPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        MPoly::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())))
    }
}

/// A quotient of polynomials; consumers taking valuations only need
/// `val(num) - val(den)`, so no gcd reduction is performed.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    pub num: MPoly<F>,
    pub den: MPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: MPoly<F>, den: MPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly<F>) -> Self {
        let den = MPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn eval(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point);
        d.inv().map(|i| self.num.eval(point) * i)
    }

    /// Order at the origin, `ord(num) - ord(den)`.
    pub fn order_at_origin(&self) -> Result<i64> {
        Ok(self.num.order_at_origin()? as i64 - self.den.order_at_origin()? as i64)
    }
}
