use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use super::{rat_to_string, Field, Rat};
use crate::error::{Error, Result};
use crate::poly::factor::factor_over;
use crate::poly::UPoly;

/// Default cap on the height of a field tower.
pub const DEFAULT_TOWER_CAP: usize = 2;

pub struct ExtNode {
    id: u64,
    depth: usize,
    base: FieldCtx,
    /// Monic minimal polynomial over `base`, low degree first.
    minpoly: Vec<AlgNum>,
    name: String,
}

impl ExtNode {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// A field in a tower ℚ ⊂ ℚ(α₁) ⊂ ℚ(α₁)(α₂) ⊂ …
///
/// Contexts are interned: extending the same field by the same minimal
/// polynomial twice yields the same context, so values built in separate
/// computations remain comparable.
#[derive(Clone, Default)]
pub struct FieldCtx(Option<Arc<ExtNode>>);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type InternKey = (u64, Vec<AlgNum>);
static INTERNER: LazyLock<Mutex<HashMap<InternKey, Arc<ExtNode>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx(None)
    }

    pub fn is_rationals(&self) -> bool {
        self.0.is_none()
    }

    pub fn id(&self) -> u64 {
        self.0.as_ref().map_or(0, |n| n.id)
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.depth)
    }

    /// Degree over ℚ.
    pub fn degree(&self) -> usize {
        match &self.0 {
            None => 1,
            Some(n) => n.degree() * n.base.degree(),
        }
    }

    /// Degree over the field directly below.
    pub fn relative_degree(&self) -> usize {
        self.0.as_ref().map_or(1, |n| n.degree())
    }

    pub fn base(&self) -> FieldCtx {
        self.0.as_ref().map_or_else(FieldCtx::rationals, |n| n.base.clone())
    }

    pub fn name(&self) -> &str {
        self.0.as_ref().map_or("Q", |n| n.name.as_str())
    }

    pub fn minpoly(&self) -> Option<UPoly<AlgNum>> {
        self.0.as_ref().map(|n| UPoly::new(n.minpoly.clone()))
    }

    /// The adjoined generator, `None` for ℚ.
    pub fn generator(&self) -> Option<AlgNum> {
        self.0
            .as_ref()
            .map(|n| AlgNum::Ext(n.clone(), vec![AlgNum::zero(), AlgNum::one()]))
    }

    /// Chain of contexts from ℚ (exclusive) up to `self` (inclusive).
    pub fn tower(&self) -> Vec<FieldCtx> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_rationals() {
            out.push(cur.clone());
            cur = cur.base();
        }
        out.reverse();
        out
    }

    /// Whether `self` is `other` or an extension of it.
    pub fn extends(&self, other: &FieldCtx) -> bool {
        let mut cur = self.clone();
        loop {
            if cur == *other {
                return true;
            }
            if cur.is_rationals() {
                return false;
            }
            cur = cur.base();
        }
    }

    pub fn contains(&self, a: &AlgNum) -> bool {
        self.extends(&a.ctx())
    }

    /// Embedding of an element of a subfield; elements are stored in
    /// normal form at the lowest level, so this is the identity once the
    /// containment is checked.
    pub fn embed(&self, a: &AlgNum) -> Result<AlgNum> {
        if self.contains(a) {
            Ok(a.clone())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// The smaller of two comparable contexts' common extension.
    pub fn join(a: &FieldCtx, b: &FieldCtx) -> Result<FieldCtx> {
        if a.extends(b) {
            Ok(a.clone())
        } else if b.extends(a) {
            Ok(b.clone())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn describe(&self) -> String {
        match &self.0 {
            None => "Q".into(),
            Some(n) => format!(
                "{}[{}]/({})",
                n.base.describe(),
                n.name,
                UPoly::new(n.minpoly.clone()).to_string_var(&n.name)
            ),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Extends `ctx` by a root of `m`, verifying irreducibility, with the
/// default tower cap.
pub fn extend_field(ctx: &FieldCtx, m: &UPoly<AlgNum>) -> Result<FieldCtx> {
    extend_field_with_cap(ctx, m, DEFAULT_TOWER_CAP)
}

pub fn extend_field_with_cap(ctx: &FieldCtx, m: &UPoly<AlgNum>, cap: usize) -> Result<FieldCtx> {
    if m.degree().unwrap_or(0) == 0 {
        return Err(Error::NotIrreducible(m.to_string()));
    }
    if m.coeffs().iter().any(|c| !ctx.contains(c)) {
        return Err(Error::ContextMismatch);
    }
    let m = m.monic();
    if m.deg() == 1 {
        return Ok(ctx.clone());
    }
    if ctx.depth() + 1 > cap {
        return Err(Error::TowerDepthExceeded { cap });
    }
    let key = (ctx.id(), m.coeffs().to_vec());
    if let Some(node) = INTERNER.lock().expect("interner poisoned").get(&key) {
        return Ok(FieldCtx(Some(node.clone())));
    }
    let factors = factor_over(ctx, &m)?;
    if factors.len() != 1 || factors[0].1 != 1 {
        return Err(Error::NotIrreducible(m.to_string_var("t")));
    }
    let mut map = INTERNER.lock().expect("interner poisoned");
    let node = map
        .entry(key)
        .or_insert_with(|| {
            let id = NEXT_ID.fetch_add(1, Ordering::Relaxed);
            Arc::new(ExtNode {
                id,
                depth: ctx.depth() + 1,
                base: ctx.clone(),
                minpoly: m.coeffs().to_vec(),
                name: format!("a{id}"),
            })
        })
        .clone();
    Ok(FieldCtx(Some(node)))
}

/// Element of a [`FieldCtx`] in normal form: rationals are always `Rat`,
/// and an `Ext` value always has a nonconstant representative (degree ≥ 1
/// in its generator, below the minimal polynomial's degree).
#[derive(Clone)]
pub enum AlgNum {
    Rat(Rat),
    Ext(Arc<ExtNode>, Vec<AlgNum>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn field_arith(op: ArithOp, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_add(&b.neg_ref()),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => {
            FieldCtx::join(&a.ctx(), &b.ctx())?;
            let inv = b.checked_inv()?;
            a.checked_mul(&inv)
        }
    }
}

impl AlgNum {
    pub fn from_rat(r: Rat) -> Self {
        AlgNum::Rat(r)
    }

    pub fn from_int(n: i64) -> Self {
        AlgNum::Rat(Rat::from_integer(n.into()))
    }

    pub fn ctx(&self) -> FieldCtx {
        match self {
            AlgNum::Rat(_) => FieldCtx::rationals(),
            AlgNum::Ext(n, _) => FieldCtx(Some(n.clone())),
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            AlgNum::Rat(r) => Some(r),
            AlgNum::Ext(..) => None,
        }
    }

    /// Coefficients of `self` as a polynomial in the generator of `node`.
    fn coeffs_at(&self, node: &Arc<ExtNode>) -> Vec<AlgNum> {
        match self {
            AlgNum::Ext(n, c) if n.id == node.id => c.clone(),
            _ => vec![self.clone()],
        }
    }

    fn normalize(node: &Arc<ExtNode>, mut coeffs: Vec<AlgNum>) -> AlgNum {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => AlgNum::zero(),
            1 => coeffs.pop().expect("one element"),
            _ => AlgNum::Ext(node.clone(), coeffs),
        }
    }

    fn common_node(&self, other: &AlgNum) -> Result<Option<Arc<ExtNode>>> {
        Ok(FieldCtx::join(&self.ctx(), &other.ctx())?.0)
    }

    /// Coordinates over the base of `ctx` in the power basis of its
    /// generator, padded to the relative degree. `self` must lie in `ctx`.
    pub fn coords(&self, ctx: &FieldCtx) -> Vec<AlgNum> {
        match &ctx.0 {
            None => vec![self.clone()],
            Some(node) => {
                let mut c = self.coeffs_at(node);
                c.resize(node.degree(), AlgNum::zero());
                c
            }
        }
    }

    /// Inverse of [`AlgNum::coords`]; reduces modulo the minimal polynomial.
    pub fn from_coords(ctx: &FieldCtx, coords: &[AlgNum]) -> Result<AlgNum> {
        match &ctx.0 {
            None => Ok(coords.first().cloned().unwrap_or_else(AlgNum::zero)),
            Some(_) => {
                let t = ctx.generator().expect("extension");
                let mut acc = AlgNum::zero();
                for c in coords.iter().rev() {
                    acc = acc.checked_mul(&t)?.checked_add(c)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn checked_add(&self, other: &AlgNum) -> Result<AlgNum> {
        if let (AlgNum::Rat(a), AlgNum::Rat(b)) = (self, other) {
            return Ok(AlgNum::Rat(a + b));
        }
        let node = self.common_node(other)?.expect("non-rational operand");
        let (a, b) = (self.coeffs_at(&node), other.coeffs_at(&node));
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let x = a.get(k).cloned().unwrap_or_else(AlgNum::zero);
            let y = b.get(k).cloned().unwrap_or_else(AlgNum::zero);
            out.push(x.checked_add(&y)?);
        }
        Ok(Self::normalize(&node, out))
    }

    pub fn checked_mul(&self, other: &AlgNum) -> Result<AlgNum> {
        if let (AlgNum::Rat(a), AlgNum::Rat(b)) = (self, other) {
            return Ok(AlgNum::Rat(a * b));
        }
        if self.is_zero() || other.is_zero() {
            FieldCtx::join(&self.ctx(), &other.ctx())?;
            return Ok(AlgNum::zero());
        }
        let node = self.common_node(other)?.expect("non-rational operand");
        let (a, b) = (self.coeffs_at(&node), other.coeffs_at(&node));
        let mut prod = vec![AlgNum::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = prod[i + j].checked_add(&x.checked_mul(y)?)?;
            }
        }
        // reduce modulo the monic minimal polynomial
        let n = node.degree();
        for k in (n..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], AlgNum::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = c.checked_mul(&node.minpoly[j])?;
                prod[k - n + j] = prod[k - n + j].checked_add(&t.neg_ref())?;
            }
        }
        prod.truncate(n);
        Ok(Self::normalize(&node, prod))
    }

    pub fn neg_ref(&self) -> AlgNum {
        match self {
            AlgNum::Rat(r) => AlgNum::Rat(-r),
            AlgNum::Ext(n, c) => AlgNum::Ext(n.clone(), c.iter().map(|x| x.neg_ref()).collect()),
        }
    }

    pub fn checked_inv(&self) -> Result<AlgNum> {
        match self {
            AlgNum::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            AlgNum::Rat(r) => Ok(AlgNum::Rat(r.recip())),
            AlgNum::Ext(node, c) => {
                let a = UPoly::new(c.clone());
                let m = UPoly::new(node.minpoly.clone());
                let inv = a.inv_mod(&m).ok_or(Error::DivisionByZero)?;
                Ok(Self::normalize(node, inv.into_coeffs()))
            }
        }
    }

    /// Decimal approximation through a chosen complex embedding is out of
    /// scope; this reports rationals exactly and algebraic values by their
    /// representative.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AlgNum::Rat(a), AlgNum::Rat(b)) => a == b,
            (AlgNum::Ext(n, a), AlgNum::Ext(m, b)) => n.id == m.id && a == b,
            _ => false,
        }
    }
}

impl Eq for AlgNum {}

impl Hash for AlgNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            AlgNum::Rat(r) => {
                0u64.hash(state);
                r.hash(state);
            }
            AlgNum::Ext(n, c) => {
                n.id.hash(state);
                c.hash(state);
            }
        }
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNum::Rat(r) => f.write_str(&rat_to_string(r)),
            AlgNum::Ext(n, c) => {
                let p = UPoly::new(c.clone());
                write!(f, "({})", p.to_string_var(&n.name))
            }
        }
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum::Rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, AlgNum::Rat(r) if r.is_zero())
    }
}

impl One for AlgNum {
    fn one() -> Self {
        AlgNum::Rat(Rat::one())
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.neg_ref()
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, o: AlgNum) -> AlgNum {
        self.checked_add(&o).expect("field context mismatch")
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, o: AlgNum) -> AlgNum {
        self.checked_add(&o.neg_ref()).expect("field context mismatch")
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, o: AlgNum) -> AlgNum {
        self.checked_mul(&o).expect("field context mismatch")
    }
}

impl Div for AlgNum {
    type Output = AlgNum;
    fn div(self, o: AlgNum) -> AlgNum {
        field_arith(ArithOp::Div, &self, &o).expect("division failed")
    }
}

impl Field for AlgNum {
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    fn from_rat(r: &Rat) -> Self {
        AlgNum::Rat(r.clone())
    }

    fn is_rational(&self) -> bool {
        matches!(self, AlgNum::Rat(_))
    }
}
