//! Triangular sets, their ordering, ascending sets and basic sets.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RankKey};

/// Nonzero polynomials with strictly increasing main variables. A nonzero
/// constant (main variable below every variable) can only come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangularSet {
    members: Vec<Polynomial>,
}

impl TriangularSet {
    pub fn new(members: Vec<Polynomial>) -> Result<Self> {
        for (i, p) in members.iter().enumerate() {
            if p.is_zero() {
                return Err(Error::NotTriangular { index: i, reason: "is zero".into() });
            }
            if i > 0 {
                let prev = &members[i - 1];
                if let Err(e) = prev.compatible(p) {
                    return Err(Error::NotTriangular { index: i, reason: e.to_string() });
                }
                if prev.main_variable() >= p.main_variable() {
                    return Err(Error::NotTriangular {
                        index: i,
                        reason: "does not have a greater main variable than its predecessor".into(),
                    });
                }
            }
        }
        Ok(TriangularSet { members })
    }

    pub fn members(&self) -> &[Polynomial] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Polynomial> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ranks(&self) -> Vec<RankKey> {
        self.members.iter().map(Polynomial::rank).collect()
    }

    /// A set containing a nonzero constant has no zeros.
    pub fn is_contradictory(&self) -> bool {
        self.members.first().is_some_and(Polynomial::is_nonzero_constant)
    }

    /// Compares rank sequences position by position, treating positions past
    /// the end as greater than any rank. `Less` means `self ≺ other`; a longer
    /// set whose prefix is rank-equivalent to `other` is smaller.
    pub fn tri_compare(&self, other: &TriangularSet) -> Result<Ordering> {
        if let (Some(a), Some(b)) = (self.members.first(), other.members.first()) {
            if a.order() != b.order() {
                return Err(Error::OrderMismatch);
            }
        }
        Ok(compare_rank_sequences(&self.ranks(), &other.ranks()))
    }

    /// Every later member is reduced with respect to every earlier one.
    pub fn is_ascending(&self) -> bool {
        self.members.iter().enumerate().all(|(j, sj)| self.members[..j].iter().all(|si| sj.reduced_to(si)))
    }

    /// Every nonconstant member's initial is reduced w.r.t. the whole set.
    pub fn initials_reduced(&self) -> bool {
        self.members.iter().filter(|p| p.main_variable().is_some()).all(|p| p.initial().reduced_to_all(&self.members))
    }
}

/// Lexicographic comparison with the end of a sequence acting as a top element.
pub fn compare_rank_sequences(a: &[RankKey], b: &[RankKey]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    // equivalent prefixes: the longer sequence is smaller
    b.len().cmp(&a.len())
}

/// Scales `p` to a canonical representative of its class under nonzero
/// scalar multiples. Over Q: coprime integer coefficients, positive leading
/// coefficient. Over `F_p`: leading coefficient 1.
pub fn normalize_primitive(p: &Polynomial) -> Polynomial {
    let Some(lc) = p.leading_coeff() else {
        return p.clone();
    };
    if !p.field().is_rational() {
        return p.scale(&lc.inv().expect("nonzero leading coefficient"));
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficient");
        den_lcm = den_lcm.lcm(r.denom());
        num_gcd = num_gcd.gcd(r.numer());
    }
    let mut factor = BigRational::new(den_lcm, num_gcd);
    if lc.is_negative() {
        factor = -factor;
    }
    debug_assert!(!factor.is_zero() && factor.is_positive() != lc.is_negative());
    p.scale(&Coeff::from_rational(factor))
}

/// Candidate for basic-set extraction: the caller's polynomial plus its
/// normalized form, which drives deduplication and tie-breaking.
struct Candidate<'a> {
    original: &'a Polynomial,
    normal: Polynomial,
    rank: RankKey,
}

/// Rank-minimal ascending set extracted greedily from `ps`.
///
/// Zeros are dropped and scalar-multiple duplicates collapsed (first
/// occurrence kept). Among rank-equivalent candidates the one with fewer
/// terms wins, then the smaller normalized form in canonical order.
pub fn basic_set(ps: &[Polynomial]) -> Result<TriangularSet> {
    let nonzero: Vec<&Polynomial> = ps.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(Error::NoNonzeroPolynomial);
    };
    for p in &nonzero[1..] {
        first.compatible(p)?;
    }

    let mut candidates: Vec<Candidate> = Vec::with_capacity(nonzero.len());
    for p in nonzero {
        let normal = normalize_primitive(p);
        if candidates.iter().any(|c| c.normal == normal) {
            continue;
        }
        candidates.push(Candidate { original: p, rank: p.rank(), normal });
    }
    candidates.sort_by(|a, b| {
        a.rank
            .cmp(&b.rank)
            .then_with(|| a.normal.num_terms().cmp(&b.normal.num_terms()))
            .then_with(|| a.normal.canonical_cmp(&b.normal))
    });

    let head = &candidates[0];
    let mut chosen: Vec<&Polynomial> = vec![head.original];
    if head.rank.main_var.is_none() {
        return TriangularSet::new(vec![head.original.clone()]);
    }
    let mut last_var = head.rank.main_var;
    loop {
        // candidates are sorted, so the first admissible one is rank-minimal
        let next =
            candidates.iter().find(|c| c.rank.main_var > last_var && chosen.iter().all(|b| c.original.reduced_to(b)));
        match next {
            Some(c) => {
                chosen.push(c.original);
                last_var = c.rank.main_var;
            }
            None => break,
        }
    }
    TriangularSet::new(chosen.into_iter().cloned().collect())
}
