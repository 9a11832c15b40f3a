//! Brute-force zero sets over `F_p`.
//!
//! [`ZeroOracle`] enumerates every point of `F_p^n` and evaluates with its
//! own term-by-term evaluator, which shares no code with
//! [`Polynomial::evaluate`]. Set identities between zero sets are then
//! decided by comparing explicit point sets.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::charset::{initial_product, ZeroDecomposition};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarOrder};
use crate::triset::TriangularSet;

/// Largest point space the oracle will enumerate.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

const CHUNK: u64 = 1 << 12;

/// Coordinates of a point, indexed like the variable order.
pub type Point = Vec<u32>;

/// A set of points, iterated in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet(BTreeSet<Point>);

impl PointSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pt: &[u32]) -> bool {
        self.0.contains(pt)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet(self.0.difference(&other.0).cloned().collect())
    }

    /// Least point in exactly one of the two sets.
    pub fn first_difference(&self, other: &PointSet) -> Option<Point> {
        self.0.symmetric_difference(&other.0).min().cloned()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet(iter.into_iter().collect())
    }
}

/// Outcome of a zero-set identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub counterexample: Option<Point>,
    pub points: usize,
}

impl IdentityCheck {
    fn compare(lhs: &PointSet, rhs: &PointSet) -> Self {
        let counterexample = lhs.first_difference(rhs);
        IdentityCheck { holds: counterexample.is_none(), counterexample, points: lhs.len() }
    }
}

/// Polynomial flattened to `(coefficient, exponents)` pairs over `F_p`.
struct Compiled {
    terms: Vec<(u64, Vec<u32>)>,
}

impl Compiled {
    fn new(p: &Polynomial) -> Self {
        let terms =
            p.terms().map(|(m, c)| (c.as_residue().expect("prime field") as u64, m.exponents().to_vec())).collect();
        Compiled { terms }
    }

    fn vanishes_at(&self, pt: &[u32], p: u64) -> bool {
        let mut acc = 0u64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (x, &e) in pt.iter().zip(exps) {
                for _ in 0..e {
                    t = t * (*x as u64) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc == 0
    }
}

/// Exhaustive evaluator over `F_p^n` for a fixed variable order.
#[derive(Clone, Debug)]
pub struct ZeroOracle {
    field: Field,
    modulus: u32,
    order: VarOrder,
    size: u64,
}

impl ZeroOracle {
    pub fn new(field: Field, order: &VarOrder) -> Result<Self> {
        let Some(p) = field.modulus() else {
            return Err(Error::Unsupported("zero sets over QQ cannot be enumerated; use a prime field".into()));
        };
        let points = (p as u128).checked_pow(order.len() as u32).unwrap_or(u128::MAX);
        if points > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded { points, limit: ENUMERATION_BUDGET });
        }
        Ok(ZeroOracle { field, modulus: p, order: order.clone(), size: points as u64 })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    /// Number of points in `F_p^n`.
    pub fn space_size(&self) -> u64 {
        self.size
    }

    fn point(&self, mut idx: u64) -> Point {
        let p = self.modulus as u64;
        let mut pt = vec![0u32; self.order.len()];
        for c in pt.iter_mut().rev() {
            *c = (idx % p) as u32;
            idx /= p;
        }
        pt
    }

    fn compile(&self, ps: &[Polynomial]) -> Result<Vec<Compiled>> {
        for p in ps {
            if p.field() != self.field {
                return Err(Error::FieldMismatch(self.field.to_string(), p.field().to_string()));
            }
            if p.order() != &self.order {
                return Err(Error::OrderMismatch);
            }
        }
        Ok(ps.iter().map(Compiled::new).collect())
    }

    fn collect<F>(&self, keep: F) -> PointSet
    where
        F: Fn(&[u32]) -> bool + Sync,
    {
        let chunks = self.size.div_ceil(CHUNK);
        let found: Vec<Vec<Point>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(self.size);
                (c * CHUNK..end).map(|i| self.point(i)).filter(|pt| keep(pt)).collect()
            })
            .collect();
        found.into_iter().flatten().collect()
    }

    /// Common zeros of `ps`; every point when `ps` is empty.
    pub fn vanishing_set(&self, ps: &[Polynomial]) -> Result<PointSet> {
        let compiled = self.compile(ps)?;
        let p = self.modulus as u64;
        Ok(self.collect(|pt| compiled.iter().all(|c| c.vanishes_at(pt, p))))
    }

    /// Zeros of `set` at which `ip` does not vanish.
    pub fn quasi_vanishing_set(&self, set: &TriangularSet, ip: &Polynomial) -> Result<PointSet> {
        let compiled = self.compile(set.members())?;
        let ip = self.compile(std::slice::from_ref(ip))?.pop().expect("one polynomial");
        let p = self.modulus as u64;
        Ok(self.collect(|pt| compiled.iter().all(|c| c.vanishes_at(pt, p)) && !ip.vanishes_at(pt, p)))
    }

    /// Whether `pt` is a common zero of `ps`, by the oracle's own evaluator.
    pub fn is_common_zero(&self, ps: &[Polynomial], pt: &[u32]) -> Result<bool> {
        let compiled = self.compile(ps)?;
        Ok(compiled.iter().all(|c| c.vanishes_at(pt, self.modulus as u64)))
    }

    /// Counts points where the oracle's evaluator and
    /// [`Polynomial::eval_residues`] disagree on whether a member of `ps`
    /// vanishes.
    pub fn evaluator_disagreements(&self, ps: &[Polynomial]) -> Result<u64> {
        let compiled = self.compile(ps)?;
        let p = self.modulus as u64;
        let chunks = self.size.div_ceil(CHUNK);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(self.size);
                let mut bad = 0u64;
                for i in c * CHUNK..end {
                    let pt = self.point(i);
                    let wide: Vec<u64> = pt.iter().map(|&x| x as u64).collect();
                    for (poly, comp) in ps.iter().zip(&compiled) {
                        if (poly.eval_residues(&wide, p) == 0) != comp.vanishes_at(&pt, p) {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum())
    }

    /// `Zero(PS) = Zero(CS/IP) ∪ ⋃_{p ∈ CS nonconstant} Zero(PS ∪ {I_p})`.
    pub fn check_well_ordering(&self, ps: &[Polynomial], cs: &TriangularSet) -> Result<IdentityCheck> {
        let lhs = self.vanishing_set(ps)?;
        let ip = initial_product(cs, self.field, &self.order);
        let mut rhs = self.quasi_vanishing_set(cs, &ip)?;
        for member in cs.members().iter().filter(|m| m.main_variable().is_some()) {
            let mut branch = ps.to_vec();
            branch.push(member.initial());
            rhs = rhs.union(&self.vanishing_set(&branch)?);
        }
        Ok(IdentityCheck::compare(&lhs, &rhs))
    }

    /// `Zero(PS) = ⋃_j Zero(CS_j / IP_j)`.
    pub fn check_decomposition(&self, ps: &[Polynomial], zd: &ZeroDecomposition) -> Result<IdentityCheck> {
        let lhs = self.vanishing_set(ps)?;
        let mut rhs = PointSet::default();
        for comp in &zd.components {
            rhs = rhs.union(&self.quasi_vanishing_set(&comp.triangular_set, &comp.initial_product)?);
        }
        Ok(IdentityCheck::compare(&lhs, &rhs))
    }
}
