#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use wuritt::coeff::{Coeff, Field};
use wuritt::io::{parse_polynomial, parse_system, SystemFile};
use wuritt::poly::{Polynomial, VarOrder};
use wuritt::pseudo::{PseudoResult, SetPseudoResult};
use wuritt::triset::TriangularSet;

/// Dense-key polynomial with schoolbook arithmetic. Shares nothing with the
/// library beyond reading terms out of a [`Polynomial`].
#[derive(Clone, Debug)]
pub struct Naive {
    modulus: Option<BigInt>,
    terms: HashMap<Vec<u32>, BigRational>,
}

impl Naive {
    pub fn from_poly(p: &Polynomial) -> Self {
        let modulus = p.field().modulus().map(BigInt::from);
        let mut terms = HashMap::new();
        for (m, c) in p.terms() {
            let value = match (c.as_rational(), c.as_residue()) {
                (Some(r), _) => r.clone(),
                (None, Some(v)) => BigRational::from_integer(BigInt::from(v)),
                _ => unreachable!("coefficient is rational or residue"),
            };
            terms.insert(m.exponents().to_vec(), value);
        }
        Naive { modulus, terms }.normalized()
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = &self.modulus {
            let p = p.clone();
            for v in self.terms.values_mut() {
                let num = ((v.numer() % &p) + &p) % &p;
                let den = ((v.denom() % &p) + &p) % &p;
                let inv = den.modpow(&(&p - 2), &p);
                *v = BigRational::from_integer((num * inv) % &p);
            }
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    pub fn mul(&self, other: &Naive) -> Naive {
        let mut terms: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *terms.entry(m).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Naive { modulus: self.modulus.clone(), terms }.normalized()
    }

    pub fn add(&self, other: &Naive) -> Naive {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigRational::zero) += c;
        }
        Naive { modulus: self.modulus.clone(), terms }.normalized()
    }

    pub fn pow(&self, e: u32) -> Naive {
        let nvars = self.terms.keys().next().map_or(0, Vec::len);
        let mut acc =
            Naive { modulus: self.modulus.clone(), terms: HashMap::from([(vec![0; nvars], BigRational::one())]) };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn same_as(&self, other: &Naive) -> bool {
        self.terms == other.terms
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Greatest variable with a positive exponent in some term.
    pub fn main_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.iter().rposition(|&e| e > 0)).max()
    }

    /// Coefficient of `x_v^d`, collected term by term.
    pub fn collect_coefficient(&self, v: usize, d: u32) -> Naive {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] == d)
            .map(|(m, c)| {
                let mut m = m.clone();
                m[v] = 0;
                (m, c.clone())
            })
            .collect();
        Naive { modulus: self.modulus.clone(), terms }
    }

    pub fn initial(&self) -> Naive {
        match self.main_var() {
            Some(v) => self.collect_coefficient(v, self.degree_in(v)),
            None if self.is_zero() => self.clone(),
            None => Naive {
                modulus: self.modulus.clone(),
                terms: HashMap::from([(self.terms.keys().next().unwrap().clone(), BigRational::one())]),
            },
        }
    }
}

/// Independent rank: (main variable, degree), constants and zero lowest.
pub fn naive_rank(p: &Polynomial) -> (Option<usize>, u32) {
    let n = Naive::from_poly(p);
    match n.main_var() {
        Some(v) => (Some(v), n.degree_in(v)),
        None => (None, 0),
    }
}

/// `q` reduced with respect to `p`, computed from raw degrees.
pub fn naive_reduced(q: &Polynomial, p: &Polynomial) -> bool {
    if q.is_zero() {
        return true;
    }
    match naive_rank(p) {
        (Some(v), d) => Naive::from_poly(q).degree_in(v) < d,
        (None, _) => false,
    }
}

/// Lexicographic comparison of rank sequences where running out ranks
/// above every rank.
pub fn naive_sequence_cmp(a: &[(Option<usize>, u32)], b: &[(Option<usize>, u32)]) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    for i in 0..a.len().max(b.len()) {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) if x != y => return x.cmp(y),
            (Some(_), Some(_)) => continue,
            (Some(_), None) => return Less,
            (None, Some(_)) => return Greater,
            (None, None) => break,
        }
    }
    Equal
}

pub fn naive_is_ascending(members: &[Polynomial]) -> bool {
    let ranks: Vec<_> = members.iter().map(naive_rank).collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (vi, vj) = (ranks[i].0, ranks[j].0);
            if vi.is_none() || vj <= vi || !naive_reduced(&members[j], &members[i]) {
                return false;
            }
        }
    }
    true
}

/// `I^s g == q f + r`, checked with [`Naive`] arithmetic.
pub fn prem_identity_holds(g: &Polynomial, f: &Polynomial, res: &PseudoResult) -> bool {
    let lhs = Naive::from_poly(&f.initial()).pow(res.exponent).mul(&Naive::from_poly(g));
    let rhs = Naive::from_poly(&res.quotient).mul(&Naive::from_poly(f)).add(&Naive::from_poly(&res.remainder));
    lhs.same_as(&rhs)
}

/// `(prod I_i^e_i) g == sum q_i s_i + r`, checked with [`Naive`] arithmetic.
pub fn set_identity_holds(g: &Polynomial, set: &TriangularSet, res: &SetPseudoResult) -> bool {
    if res.exponents.len() != set.len() || res.quotients.len() != set.len() {
        return false;
    }
    let mut lhs = Naive::from_poly(g);
    let mut rhs = Naive::from_poly(&res.remainder);
    for ((s, &e), q) in set.members().iter().zip(&res.exponents).zip(&res.quotients) {
        lhs = lhs.mul(&Naive::from_poly(&s.initial()).pow(e));
        rhs = rhs.add(&Naive::from_poly(q).mul(&Naive::from_poly(s)));
    }
    lhs.same_as(&rhs)
}

pub fn order(nvars: usize) -> VarOrder {
    VarOrder::new(["x", "y", "z"][..nvars].iter().copied()).unwrap()
}

pub fn poly(text: &str, field: Field, order: &VarOrder) -> Polynomial {
    parse_polynomial(text, field, order).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn random_coeff(rng: &mut ChaCha8Rng, field: Field) -> Coeff {
    match field.modulus() {
        Some(p) => Coeff::from_i64(field, rng.gen_range(0..p as i64)),
        None => {
            let n = BigInt::from(rng.gen_range(-20i64..=20));
            let d = BigInt::from(rng.gen_range(1i64..=6));
            Coeff::from_ratio(field, &n, &d).unwrap()
        }
    }
}

/// Random polynomial with at most `max_terms` terms and every exponent at
/// most `max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, field: Field, order: &VarOrder, max_terms: usize, max_deg: u32) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let exps = (0..order.len()).map(|_| rng.gen_range(0..=max_deg)).collect();
            (exps, random_coeff(rng, field))
        })
        .collect();
    Polynomial::from_terms(field, order, terms).unwrap()
}

pub fn random_nonzero(
    rng: &mut ChaCha8Rng,
    field: Field,
    order: &VarOrder,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    loop {
        let p = random_poly(rng, field, order, max_terms.max(1), max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn load_dir(sub: &str) -> Vec<(String, PathBuf, SystemFile)> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(fixtures_dir().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "sys"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).unwrap();
            let sys = parse_system(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            (path.file_stem().unwrap().to_string_lossy().into_owned(), path, sys)
        })
        .collect()
}

/// The finite-field system corpus.
pub fn systems() -> Vec<(String, PathBuf, SystemFile)> {
    load_dir("systems")
}

/// Hypothesis/conclusion systems over QQ.
pub fn prove_systems() -> Vec<(String, PathBuf, SystemFile)> {
    load_dir("prove")
}
