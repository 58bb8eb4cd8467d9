//! Exact field elements: arbitrary-precision rationals, or residues modulo a prime.
//!
//! A rational combined with a residue is first reduced modulo the prime, so
//! constants such as `Scalar::one()` work in either mode. Combining residues of
//! two different primes is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field in use.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::from(n),
            Field::Prime(p) => Scalar::residue(n.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn embed(self, s: Scalar) -> Scalar {
        match self {
            Field::Rational => s,
            Field::Prime(p) => s.to_residue(p),
        }
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar, Error> {
        let s: Scalar = text.parse()?;
        Ok(self.embed(s))
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(1, 1, format!("unknown field `{s}`")))?;
                if !is_prime(p) {
                    return Err(Error::parse(1, 4, format!("{p} is not prime")));
                }
                Ok(Field::Prime(p))
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(BigRational::one())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn residue(value: u64, modulus: u64) -> Self {
        Scalar::Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn to_residue(&self, p: u64) -> Scalar {
        match self {
            Scalar::Fp { modulus, .. } => {
                assert_eq!(*modulus, p, "mixing residues of different primes");
                self.clone()
            }
            Scalar::Q(q) => {
                let m = BigInt::from(p);
                let num = q.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_u64().unwrap_or(0);
                assert!(den != 0, "denominator {} not invertible mod {p}", q.denom());
                Scalar::residue(mul_mod(num, inv_mod(den, p), p), p)
            }
        }
    }

    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => Scalar::residue(inv_mod(*value, *modulus), *modulus),
        }
    }

    pub fn pow(&self, exp: usize) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if exp == 0 {
            return self.field().from_i64(1);
        }
        acc
    }

    fn binary(
        &self,
        rhs: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q(a, b)),
            (Scalar::Fp { value: a, modulus }, other) | (other, Scalar::Fp { value: a, modulus })
                if matches!(other, Scalar::Q(_)) =>
            {
                let p = *modulus;
                let b = match other.to_residue(p) {
                    Scalar::Fp { value, .. } => value,
                    Scalar::Q(_) => unreachable!(),
                };
                // restore operand order for non-commutative ops
                if matches!(self, Scalar::Fp { .. }) {
                    Scalar::residue(fp(*a, b, p), p)
                } else {
                    Scalar::residue(fp(b, *a, p), p)
                }
            }
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: p2 }) => {
                assert_eq!(p, p2, "mixing residues of different primes");
                Scalar::residue(fp(*a, *b, *p), *p)
            }
            _ => unreachable!(),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Q(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Q(q)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::parse(1, 1, format!("invalid scalar `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Q(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scalar {
    /// A rational `n/d` with `|n| ≤ bound` and `1 ≤ d ≤ 3`.
    pub fn random_small(rng: &mut impl rand::Rng, bound: i64) -> Scalar {
        Scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { value, modulus } => Scalar::residue((modulus - value) % modulus, *modulus),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $q:expr, $fp:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, $q, $fp)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b, p| (a + b) % p);
forward_binop!(Sub, sub, |a, b| a - b, |a, b, p| (a + p - b) % p);
forward_binop!(Mul, mul, |a, b| a * b, mul_mod);
forward_binop!(
    Div,
    div,
    |a, b| {
        assert!(!b.is_zero(), "division by zero");
        a / b
    },
    |a, b, p| mul_mod(a, inv_mod(b, p), p)
);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
