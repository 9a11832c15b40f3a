//! Sparse multivariate polynomials over a declared variable order.
//!
//! Variables are identified by their position in a [`VarOrder`]; index 0 is
//! the least variable. Everything the characteristic set method needs from a
//! polynomial is relative to that order: the main (greatest occurring)
//! variable, the degree in it, the initial, and the rank.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};

/// Ordered, distinct variable names; the first name is the least variable.
#[derive(Clone, Debug)]
pub struct VarOrder(Arc<[String]>);

impl VarOrder {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidVarOrder("no variables declared".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidVarOrder("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarOrder(format!("variable `{n}` declared twice")));
            }
        }
        Ok(VarOrder(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.0[v]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarOrder {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarOrder {}

impl Hash for VarOrder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

/// Power product stored as a dense exponent vector aligned with the
/// [`VarOrder`]. Ordered by total degree, then by exponents compared from the
/// greatest variable down; greatest first is the canonical listing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree_of(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Greatest variable with a positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial(exps.into()))
    }

    fn without(&self, v: usize) -> Monomial {
        let mut exps = self.0.to_vec();
        exps[v] = 0;
        Monomial(exps.into())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank of a polynomial: main variable (`None` for constants, below every
/// variable) and the degree in it. Compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankKey {
    pub main_var: Option<usize>,
    pub main_deg: u32,
}

impl RankKey {
    pub const BOTTOM: RankKey = RankKey { main_var: None, main_deg: 0 };
}

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    order: VarOrder,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(field: Field, order: &VarOrder) -> Self {
        Polynomial { field, order: order.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, order: &VarOrder, c: Coeff) -> Result<Self> {
        if c.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
        }
        let mut p = Self::zero(field, order);
        p.add_term(Monomial::one(order.len()), c);
        Ok(p)
    }

    pub fn from_i64(field: Field, order: &VarOrder, n: i64) -> Self {
        Self::constant(field, order, Coeff::from_i64(field, n)).expect("same field")
    }

    pub fn one(field: Field, order: &VarOrder) -> Self {
        Self::from_i64(field, order, 1)
    }

    /// The polynomial `X_v`.
    pub fn variable(field: Field, order: &VarOrder, v: usize) -> Self {
        assert!(v < order.len(), "variable index {v} out of range");
        let mut exps = vec![0; order.len()];
        exps[v] = 1;
        let mut p = Self::zero(field, order);
        p.add_term(Monomial::from_exponents(exps), Coeff::one(field));
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(field: Field, order: &VarOrder, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Coeff)>,
    {
        let mut p = Self::zero(field, order);
        for (exps, c) in terms {
            if exps.len() != order.len() {
                return Err(Error::Usage(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    order.len()
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.len()
    }

    /// Terms in canonical order, greatest monomial first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(Coeff::zero(self.field))
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of the greatest monomial in canonical order.
    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Self::zero(self.field, &self.order);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coeff) -> Polynomial {
        assert_eq!(c.field(), self.field, "scalar from a different field");
        if c.is_zero() {
            return Self::zero(self.field, &self.order);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    /// `self * X_v^k`.
    pub fn mul_var_pow(&self, v: usize, k: u32) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.0.to_vec();
                exps[v] = exps[v].checked_add(k).ok_or(Error::ExponentOverflow)?;
                Ok((Monomial(exps.into()), c.clone()))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Polynomial { field: self.field, order: self.order.clone(), terms })
    }

    /// `self^e`, with `p^0 = 1` for every `p` including zero.
    pub fn pow(&self, mut e: u32) -> Result<Polynomial> {
        let mut acc = Self::one(self.field, &self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Greatest variable occurring with positive degree; `None` for constants
    /// (zero included).
    pub fn main_variable(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// Degree in the main variable; 0 for constants.
    pub fn main_degree(&self) -> u32 {
        self.main_variable().map_or(0, |v| self.degree_of(v))
    }

    pub fn degree_of(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_of(v)).max().unwrap_or(0)
    }

    /// Leading coefficient of `self` viewed as a univariate polynomial in
    /// `X_v`. When `X_v` does not occur this is `self`.
    pub fn initial_of(&self, v: usize) -> Polynomial {
        let d = self.degree_of(v);
        let mut out = Self::zero(self.field, &self.order);
        for (m, c) in &self.terms {
            if m.degree_of(v) == d {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// `initial(0) = 0`, `initial(c) = 1` for a nonzero constant, and the
    /// leading coefficient in the main variable otherwise.
    pub fn initial(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.main_variable() {
            None => Self::one(self.field, &self.order),
            Some(m) => self.initial_of(m),
        }
    }

    /// The part of `self` below its leading degree in `X_v`:
    /// `self = initial_of(v) * X_v^d + tail_of(v)`.
    pub fn tail_of(&self, v: usize) -> Polynomial {
        let d = self.degree_of(v);
        let terms =
            self.terms.iter().filter(|(m, _)| m.degree_of(v) < d).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn rank(&self) -> RankKey {
        match self.main_variable() {
            None => RankKey::BOTTOM,
            Some(v) => RankKey { main_var: Some(v), main_deg: self.degree_of(v) },
        }
    }

    /// `Less` realizes `self ≺ other`; `Equal` is rank equivalence, not
    /// polynomial equality.
    pub fn rank_cmp(&self, other: &Polynomial) -> Result<Ordering> {
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        Ok(self.rank().cmp(&other.rank()))
    }

    /// Whether `self` is reduced with respect to `p`: zero is reduced w.r.t.
    /// everything, nothing nonzero is reduced w.r.t. a constant, otherwise
    /// the degree in `p`'s main variable must be below `p`'s main degree.
    pub fn reduced_to(&self, p: &Polynomial) -> bool {
        if self.is_zero() {
            return true;
        }
        match p.main_variable() {
            None => false,
            Some(m) => self.degree_of(m) < p.degree_of(m),
        }
    }

    pub fn reduced_to_all<'a, I>(&self, ps: I) -> bool
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        ps.into_iter().all(|p| self.reduced_to(p))
    }

    /// Exact value at `point`, where `point[v]` is the value of `X_v`.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        for (v, c) in point.iter().enumerate().take(self.nvars()) {
            if c.field() != self.field && self.degree_of(v) > 0 {
                return Err(Error::FieldMismatch(self.field.to_string(), c.field().to_string()));
            }
        }
        if let Some(v) = (point.len()..self.nvars()).find(|&v| self.degree_of(v) > 0) {
            return Err(Error::MissingAssignment(self.order.name(v).to_string()));
        }
        if let Some(p) = self.field.modulus() {
            let residues: Vec<u64> = point.iter().map(|c| c.as_residue().unwrap_or(0) as u64).collect();
            return Ok(Coeff::from_i64(self.field, self.eval_residues(&residues, p as u64) as i64));
        }
        // Powers are cached per variable; the term map is walked once.
        let mut powers: Vec<Vec<Coeff>> = vec![Vec::new(); self.nvars()];
        let mut acc = Coeff::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                if cache.is_empty() {
                    cache.push(Coeff::one(self.field));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[v];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Fast evaluation over `F_p` on raw residues, with per-variable power
    /// tables. `point.len()` must cover every occurring variable.
    pub fn eval_residues(&self, point: &[u64], p: u64) -> u64 {
        let n = self.nvars();
        let mut tables: Vec<Vec<u64>> = Vec::with_capacity(n);
        for v in 0..n {
            let d = self.degree_of(v) as usize;
            let x = point.get(v).copied().unwrap_or(0) % p;
            let mut t = Vec::with_capacity(d + 1);
            t.push(1 % p);
            for i in 0..d {
                t.push(t[i] * x % p);
            }
            tables.push(t);
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.as_residue().expect("prime field coefficient") as u64;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * tables[v][e as usize] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Deterministic total order on polynomials: terms compared greatest
    /// first (monomial, then coefficient), a proper prefix is smaller.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        let mut a = self.terms();
        let mut b = other.terms();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.canonical_cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("incompatible polynomial operands")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
