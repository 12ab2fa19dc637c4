//! Exact coefficient arithmetic over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Largest modulus accepted for a prime field. Products of two residues fit in a `u128`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field: either the rationals or the prime field with `p` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match *self {
            FieldSpec::Rationals => FieldElem::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => FieldElem::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match *self {
            FieldSpec::Rationals => FieldElem::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes here.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<FieldElem> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(self.from_bigint(num) * d.inverse().expect("nonzero"))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `Fp 5`, `Fp:5` and `F5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp")
            .map(|rest| rest.trim_start_matches([':', ' ']))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| FieldError::Unrecognized(s.to_string()))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| FieldError::Unrecognized(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`]. Residues carry their modulus so arithmetic is self-contained;
/// mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Rational(_) => FieldSpec::Rationals,
            FieldElem::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Whether the canonical printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            FieldElem::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.abs()),
            m => m.clone(),
        }
    }

    /// The image of a rational number in the field of `self`; `None` if its denominator
    /// vanishes there.
    pub fn reduce_rational(q: &BigRational, field: FieldSpec) -> Option<FieldElem> {
        field.from_fraction(q.numer(), q.denom())
    }

    fn assert_same_field(&self, other: &FieldElem) {
        if let (
            FieldElem::Modular { modulus: a, .. },
            FieldElem::Modular { modulus: b, .. },
        ) = (self, other)
        {
            assert_eq!(a, b, "mixed prime fields");
        } else {
            assert_eq!(self.field(), other.field(), "mixed coefficient fields");
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u64 = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_names() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp 5".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert_eq!("Fp:3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert!(matches!("Fp 4".parse::<FieldSpec>(), Err(FieldError::NotPrime(4))));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f5 = FieldSpec::Prime(5);
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(&a + &b, f5.from_i64(2));
        assert_eq!(&a * &b, f5.from_i64(2));
        assert_eq!(-&a, f5.from_i64(2));
        assert_eq!(&a * &a.inverse().unwrap(), f5.one());
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
    }

    #[test]
    fn fractions_reduce_or_vanish() {
        let f3 = FieldSpec::Prime(3);
        let half = f3.from_fraction(&1.into(), &2.into()).unwrap();
        assert_eq!(half, f3.from_i64(2));
        assert!(f3.from_fraction(&1.into(), &3.into()).is_none());
        let q = FieldSpec::Rationals.from_fraction(&2.into(), &4.into()).unwrap();
        assert_eq!(q.to_string(), "1/2");
    }
}
