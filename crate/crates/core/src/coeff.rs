//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! Every [`Coeff`] carries the field it belongs to, so mixing a rational with
//! an element of `F_p` (or elements of two different prime fields) is caught.
//! The `checked_*` methods report such mixing as [`Error::FieldMismatch`]; the
//! operator impls panic on it and are meant for code that has already
//! established that both sides agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive). Keeps products of two residues
/// inside `u64`.
pub const MODULUS_BOUND: u64 = 1 << 31;

/// A prime below 2^31, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_BOUND {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(Modulus),
}

impl Field {
    /// `F_p`, failing unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        Modulus::new(p).map(Field::Prime)
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Rationals => None,
            Field::Prime(m) => Some(m.get()),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rationals)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(m) => write!(f, "GF {}", m.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Modular { value: u32, modulus: Modulus },
}

/// An exact field element in canonical form: rationals are kept as reduced
/// fractions with positive denominator, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff(Repr);

impl Coeff {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        match field {
            Field::Rationals => Coeff(Repr::Rational(BigRational::from_integer(n.into()))),
            Field::Prime(m) => {
                let value = n.rem_euclid(m.get() as i64) as u32;
                Coeff(Repr::Modular { value, modulus: m })
            }
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Self {
        match field {
            Field::Rationals => Coeff(Repr::Rational(BigRational::from_integer(n.clone()))),
            Field::Prime(m) => {
                let r = n.mod_floor(&BigInt::from(m.get()));
                let value = r.to_u32().expect("residue fits in u32");
                Coeff(Repr::Modular { value, modulus: m })
            }
        }
    }

    /// `num / den` in `field`. Over `F_p` the denominator must be invertible.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            Field::Rationals => Ok(Coeff(Repr::Rational(BigRational::new(num.clone(), den.clone())))),
            Field::Prime(_) => {
                let d = Self::from_bigint(field, den);
                Ok(&Self::from_bigint(field, num) * &d.inv()?)
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coeff(Repr::Rational(r))
    }

    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rational(_) => Field::Rationals,
            Repr::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Modular { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Modular { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Modular { value, .. } => Some(*value),
        }
    }

    /// True for rationals below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_negative(),
            Repr::Modular { .. } => false,
        }
    }

    fn check_same(&self, other: &Coeff) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Coeff) -> Result<Coeff> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Coeff(Repr::Rational(a + b)),
            (Repr::Modular { value: a, modulus }, Repr::Modular { value: b, .. }) => {
                let p = modulus.get() as u64;
                let value = ((*a as u64 + *b as u64) % p) as u32;
                Coeff(Repr::Modular { value, modulus: *modulus })
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Coeff) -> Result<Coeff> {
        self.check_same(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Coeff) -> Result<Coeff> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Coeff(Repr::Rational(a * b)),
            (Repr::Modular { value: a, modulus }, Repr::Modular { value: b, .. }) => {
                let p = modulus.get() as u64;
                let value = ((*a as u64 * *b as u64) % p) as u32;
                Coeff(Repr::Modular { value, modulus: *modulus })
            }
            _ => unreachable!(),
        })
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => Coeff(Repr::Rational(r.recip())),
            Repr::Modular { value, modulus } => {
                let p = modulus.get() as u64;
                // Fermat: a^(p-2) = a^-1
                let value = pow_mod(*value as u64, p - 2, p) as u32;
                Coeff(Repr::Modular { value, modulus: *modulus })
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = Coeff::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used only to make term listings deterministic: rationals
    /// by value, residues by representative.
    pub fn canonical_cmp(&self, other: &Coeff) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Modular { value: a, .. }, Repr::Modular { value: b, .. }) => a.cmp(b),
            (Repr::Rational(_), Repr::Modular { .. }) => Ordering::Less,
            (Repr::Modular { .. }, Repr::Rational(_)) => Ordering::Greater,
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        match &self.0 {
            Repr::Rational(r) => Coeff(Repr::Rational(-r)),
            Repr::Modular { value, modulus } => {
                let value = if *value == 0 { 0 } else { modulus.get() - value };
                Coeff(Repr::Modular { value, modulus: *modulus })
            }
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Coeff> for &Coeff {
            type Output = Coeff;

            fn $method(self, rhs: &Coeff) -> Coeff {
                self.$checked(rhs).expect("coefficient field mismatch")
            }
        }

        impl $tr<Coeff> for Coeff {
            type Output = Coeff;

            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
