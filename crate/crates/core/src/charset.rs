//! Characteristic sets and zero decomposition.
//!
//! [`characteristic_set`] repeatedly extracts a basic set and adjoins the
//! nonzero remainders of the system against it until every remainder
//! vanishes. Each round's basic set is strictly smaller than the previous
//! one; the trace records the sequence and the loop checks it.
//!
//! [`zero_decompose`] splits `Zero(PS)` into the quasi-variety of the
//! characteristic set away from its initials, plus one branch per
//! nonconstant member in which that member's initial is adjoined.

use rayon::prelude::*;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarOrder};
use crate::pseudo::{set_pseudo_divide, set_remainder, SetPseudoResult};
use crate::triset::{basic_set, normalize_primitive, TriangularSet};
use crate::zeroset::ZeroOracle;

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;
pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Safety ceilings for loops whose termination is guaranteed by theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_iterations: usize,
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_iterations: DEFAULT_MAX_ITERATIONS, max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharsetIteration {
    pub basic_set: TriangularSet,
    pub nonzero_remainders: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharsetTrace {
    pub iterations: Vec<CharsetIteration>,
    pub result: TriangularSet,
}

/// Nonzero members of `ps`, normalized, without scalar-multiple duplicates.
fn normalized_distinct<'a, I>(ps: I) -> Vec<Polynomial>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut out: Vec<Polynomial> = Vec::new();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        let n = normalize_primitive(p);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

fn check_ring(ps: &[Polynomial]) -> Result<()> {
    if let Some(first) = ps.first() {
        for p in &ps[1..] {
            first.compatible(p)?;
        }
    }
    Ok(())
}

/// Characteristic set of `ps`, with members normalized.
pub fn characteristic_set(ps: &[Polynomial], limits: &Limits) -> Result<(TriangularSet, CharsetTrace)> {
    check_ring(ps)?;
    let base = normalized_distinct(ps);
    if base.is_empty() {
        return Err(Error::NoNonzeroPolynomial);
    }
    let mut current = base.clone();
    let mut iterations: Vec<CharsetIteration> = Vec::new();
    for _ in 0..limits.max_iterations {
        let bs = basic_set(&current)?;
        if let Some(prev) = iterations.last() {
            if bs.tri_compare(&prev.basic_set)? != std::cmp::Ordering::Less {
                return Err(Error::Internal("basic set failed to decrease".into()));
            }
        }
        let remainders: Vec<Polynomial> = current
            .par_iter()
            .filter(|p| !bs.members().contains(p))
            .map(|p| set_remainder(p, &bs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect();
        iterations.push(CharsetIteration { basic_set: bs.clone(), nonzero_remainders: remainders.len() });
        if remainders.is_empty() {
            return Ok((bs.clone(), CharsetTrace { iterations, result: bs }));
        }
        current = normalized_distinct(base.iter().chain(&remainders).chain(bs.members()));
    }
    Err(Error::CeilingExceeded(format!(
        "characteristic set did not stabilize within {} iterations",
        limits.max_iterations
    )))
}

/// Product of the initials of `set`; 1 for the empty set.
pub fn initial_product(set: &TriangularSet, field: Field, order: &VarOrder) -> Polynomial {
    set.members().iter().fold(Polynomial::one(field, order), |acc, p| &acc * &p.initial())
}

/// Result of checking the two defining conditions of a characteristic set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharsetVerdict {
    /// Every polynomial of the system has zero remainder against the set.
    pub remainders_vanish: bool,
    /// `Zero(PS) ⊆ Zero(CS)` by enumeration; `None` when not checked.
    pub zeros_contained: Option<bool>,
}

impl CharsetVerdict {
    /// Both conditions hold; an unchecked containment counts as not holding.
    pub fn holds(&self) -> bool {
        self.remainders_vanish && self.zeros_contained == Some(true)
    }
}

/// Checks whether `cs` is a characteristic set of `ps`. Remainders are
/// checked exactly; zero-set containment only when an oracle is supplied.
pub fn is_characteristic_set(
    cs: &TriangularSet,
    ps: &[Polynomial],
    oracle: Option<&ZeroOracle>,
) -> Result<CharsetVerdict> {
    let mut remainders_vanish = true;
    for p in ps {
        if !set_remainder(p, cs)?.is_zero() {
            remainders_vanish = false;
            break;
        }
    }
    let zeros_contained = match oracle {
        Some(o) => Some(o.vanishing_set(ps)?.is_subset(&o.vanishing_set(cs.members())?)),
        None => None,
    };
    Ok(CharsetVerdict { remainders_vanish, zeros_contained })
}

/// One recursion branch: the system `[I_p] ++ CS ++ PS` for member `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub member: usize,
    pub initial: Polynomial,
    pub system: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellOrderingSplit {
    pub characteristic_set: TriangularSet,
    pub initial_product: Polynomial,
    pub branches: Vec<Branch>,
}

/// Splits `Zero(ps)` along `cs`: the quasi-component `(cs, IP)` plus one
/// branch per nonconstant member. With `prune`, members whose initial is a
/// nonzero constant get no branch, since adjoining it empties the zero set.
pub fn well_ordering_split(ps: &[Polynomial], cs: &TriangularSet, prune: bool) -> Result<WellOrderingSplit> {
    let Some(ring) = cs.members().first().or(ps.first()) else {
        return Err(Error::NoNonzeroPolynomial);
    };
    let (field, order) = (ring.field(), ring.order().clone());
    let mut branches = Vec::new();
    for (i, p) in cs.members().iter().enumerate() {
        if p.main_variable().is_none() {
            continue;
        }
        let initial = p.initial();
        if prune && initial.is_nonzero_constant() {
            continue;
        }
        let mut system = Vec::with_capacity(1 + cs.len() + ps.len());
        system.push(initial.clone());
        system.extend(cs.members().iter().cloned());
        system.extend(ps.iter().cloned());
        branches.push(Branch { member: i, initial, system });
    }
    Ok(WellOrderingSplit {
        characteristic_set: cs.clone(),
        initial_product: initial_product(cs, field, &order),
        branches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub prune: bool,
    pub limits: Limits,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { prune: true, limits: Limits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub triangular_set: TriangularSet,
    pub initial_product: Polynomial,
    /// Initials adjoined along the recursion path, outermost first.
    pub provenance: Vec<Polynomial>,
}

impl Component {
    pub fn is_contradictory(&self) -> bool {
        self.triangular_set.is_contradictory()
    }
}

/// Triangular sets whose quasi-varieties cover `Zero(PS)`, depth-first with
/// each characteristic set ahead of its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDecomposition {
    pub components: Vec<Component>,
}

pub fn zero_decompose(ps: &[Polynomial], opts: &DecomposeOptions) -> Result<ZeroDecomposition> {
    let components = decompose(ps, opts, 0, Vec::new())?;
    Ok(ZeroDecomposition { components })
}

fn decompose(
    ps: &[Polynomial],
    opts: &DecomposeOptions,
    depth: usize,
    provenance: Vec<Polynomial>,
) -> Result<Vec<Component>> {
    if depth > opts.limits.max_depth {
        return Err(Error::CeilingExceeded(format!("zero decomposition deeper than {}", opts.limits.max_depth)));
    }
    let (cs, _) = characteristic_set(ps, &opts.limits)?;
    let split = well_ordering_split(ps, &cs, opts.prune)?;
    let nested: Vec<Vec<Component>> = split
        .branches
        .par_iter()
        .map(|b| {
            let mut path = provenance.clone();
            path.push(b.initial.clone());
            decompose(&b.system, opts, depth + 1, path)
        })
        .collect::<Result<_>>()?;
    let mut out = vec![Component { triangular_set: cs, initial_product: split.initial_product, provenance }];
    out.extend(nested.into_iter().flatten());
    Ok(out)
}

/// Outcome of testing a conclusion against hypotheses by pseudo-division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricProof {
    pub characteristic_set: TriangularSet,
    pub proved_generically: bool,
    /// Nonconstant initials of the characteristic set; the conclusion holds
    /// wherever the hypotheses hold and none of these vanish.
    pub nondegeneracy_conditions: Vec<Polynomial>,
    pub witness: SetPseudoResult,
}

pub fn prove_geometric(hypotheses: &[Polynomial], conclusion: &Polynomial, limits: &Limits) -> Result<GeometricProof> {
    if let Some(h) = hypotheses.first() {
        h.compatible(conclusion)?;
    }
    let (cs, _) = characteristic_set(hypotheses, limits)?;
    let witness = set_pseudo_divide(conclusion, &cs)?;
    let nondegeneracy_conditions = cs.members().iter().map(Polynomial::initial).filter(|i| !i.is_constant()).collect();
    Ok(GeometricProof {
        proved_generically: witness.remainder.is_zero(),
        characteristic_set: cs,
        nondegeneracy_conditions,
        witness,
    })
}
