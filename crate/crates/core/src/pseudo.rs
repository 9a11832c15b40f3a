//! Pseudo-division by a polynomial and by a triangular set.
//!
//! Results carry the full certificate (exponents and quotients), so every
//! division can be re-checked with [`check_identity`] or
//! [`check_set_identity`] by plain ring arithmetic.

use serde::Serialize;

use crate::error::Result;
use crate::poly::Polynomial;
use crate::triset::TriangularSet;

/// Witness of `initial(f)^exponent * g = quotient * f + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoResult {
    pub exponent: u32,
    pub quotient: Polynomial,
    pub remainder: Polynomial,
}

/// Witness of `(∏ initial(s_i)^e_i) * g = Σ q_i * s_i + r`, with the vectors
/// aligned with the members of the triangular set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPseudoResult {
    pub exponents: Vec<u32>,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Pseudo-divides `g` by `f`.
///
/// * `f = 0`: `(0, 0, g)`.
/// * `f` a nonzero constant `c`: `(0, g / c, 0)`.
/// * otherwise, with `m` the main variable of `f` and `I` its initial, the
///   leading term of the running remainder is cancelled while its degree in
///   `m` is at least `deg_m(f)`. The guard is tested before the first step,
///   so an already reduced `g` comes back as `(0, 0, g)`.
pub fn pseudo_divide(g: &Polynomial, f: &Polynomial) -> Result<PseudoResult> {
    g.compatible(f)?;
    let zero = Polynomial::zero(g.field(), g.order());
    if f.is_zero() {
        return Ok(PseudoResult { exponent: 0, quotient: zero, remainder: g.clone() });
    }
    let Some(m) = f.main_variable() else {
        let c = f.constant_value().expect("constant divisor");
        return Ok(PseudoResult { exponent: 0, quotient: g.scale(&c.inv()?), remainder: zero });
    };

    let df = f.degree_of(m);
    let init = f.initial();
    let mut s = 0u32;
    let mut q = zero;
    let mut r = g.clone();
    while r.degree_of(m) >= df {
        let dr = r.degree_of(m);
        let t = r.initial_of(m).mul_var_pow(m, dr - df)?;
        r = init.try_mul(&r)?.try_sub(&t.try_mul(f)?)?;
        q = init.try_mul(&q)?.try_add(&t)?;
        s += 1;
    }
    Ok(PseudoResult { exponent: s, quotient: q, remainder: r })
}

/// Checks `initial(f)^s * g = q * f + r` exactly, reading `0^0` as 1.
pub fn check_identity(g: &Polynomial, f: &Polynomial, res: &PseudoResult) -> bool {
    let lhs = f.initial().pow(res.exponent).and_then(|ip| ip.try_mul(g));
    let rhs = res.quotient.try_mul(f).and_then(|qf| qf.try_add(&res.remainder));
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// Pseudo-divides `g` by the members of `set`, last member first. At each
/// step the quotients collected so far are multiplied by the power of the
/// current initial, which keeps the combined identity exact.
pub fn set_pseudo_divide(g: &Polynomial, set: &TriangularSet) -> Result<SetPseudoResult> {
    let members = set.members();
    let mut exponents = Vec::with_capacity(members.len());
    let mut quotients: Vec<Polynomial> = Vec::with_capacity(members.len());
    let mut r = g.clone();
    for s in members.iter().rev() {
        let step = pseudo_divide(&r, s)?;
        if step.exponent > 0 {
            let factor = s.initial().pow(step.exponent)?;
            for q in &mut quotients {
                *q = q.try_mul(&factor)?;
            }
        }
        exponents.push(step.exponent);
        quotients.push(step.quotient);
        r = step.remainder;
    }
    exponents.reverse();
    quotients.reverse();
    Ok(SetPseudoResult { exponents, quotients, remainder: r })
}

/// `Remdr(g / set)`.
pub fn set_remainder(g: &Polynomial, set: &TriangularSet) -> Result<Polynomial> {
    set_pseudo_divide(g, set).map(|r| r.remainder)
}

/// Checks the triangular-set identity exactly.
pub fn check_set_identity(g: &Polynomial, set: &TriangularSet, res: &SetPseudoResult) -> bool {
    let members = set.members();
    if res.exponents.len() != members.len() || res.quotients.len() != members.len() {
        return false;
    }
    let check = || -> Result<bool> {
        let mut lhs = g.clone();
        for (s, &e) in members.iter().zip(&res.exponents) {
            lhs = s.initial().pow(e)?.try_mul(&lhs)?;
        }
        let mut rhs = res.remainder.clone();
        for (s, q) in members.iter().zip(&res.quotients) {
            rhs = rhs.try_add(&q.try_mul(s)?)?;
        }
        Ok(lhs == rhs)
    };
    check().unwrap_or(false)
}

/// Flags reported next to a division result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub identity_checked: bool,
    pub reduced: bool,
}

impl PseudoResult {
    pub fn certify(&self, g: &Polynomial, f: &Polynomial) -> Certificate {
        Certificate { identity_checked: check_identity(g, f, self), reduced: self.remainder.reduced_to(f) }
    }
}

impl SetPseudoResult {
    pub fn certify(&self, g: &Polynomial, set: &TriangularSet) -> Certificate {
        Certificate {
            identity_checked: check_set_identity(g, set, self),
            reduced: self.remainder.reduced_to_all(set.members()),
        }
    }
}
