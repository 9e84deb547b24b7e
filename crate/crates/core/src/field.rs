//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OiError, Result};

/// Coefficient field of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
}

/// Largest accepted characteristic; products of residues must fit in `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec::Prime { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } if p > MAX_PRIME => Err(OiError::InvalidField(format!(
                "characteristic {p} exceeds {MAX_PRIME}"
            ))),
            FieldSpec::Prime { p } if !is_prime(p) => {
                Err(OiError::InvalidField(format!("{p} is not prime")))
            }
            FieldSpec::Prime { .. } => Ok(()),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime { p } => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(OiError::InvalidScalar(format!("{num}/{den}"), "zero denominator".into()));
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| {
            OiError::InvalidScalar(
                format!("{num}/{den}"),
                "denominator vanishes in the field".into(),
            )
        })?;
        Ok(&n * &inv)
    }

    /// Parses `"a"` or `"a/b"`. Residues may be any integer and are reduced.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = |why: &str| OiError::InvalidScalar(text.to_string(), why.to_string());
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime { p } => {
                let modulus = BigInt::from(p);
                let reduce = |x: &BigInt| x.mod_floor(&modulus).to_u64().expect("residue fits");
                let n = Scalar::Residue { value: reduce(&num), p };
                let d = Scalar::Residue { value: reduce(&den), p };
                let inv = d.inv().ok_or_else(|| bad("denominator vanishes mod p"))?;
                Ok(&n * &inv)
            }
        }
    }

    pub fn belongs(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime { p }, Scalar::Residue { p: q, .. }) => p == q,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Residues carry their modulus so arithmetic needs no
/// outside context; mixing fields is a bug and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Canonical text: `"a/b"` with `b > 0` and `gcd(a, b) = 1` over ℚ, the residue
/// `0..p-1` over `F_p`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                let q = q.reduced();
                let (num, den) = if q.denom().is_negative() {
                    (-q.numer(), -q.denom())
                } else {
                    (q.numer().clone(), q.denom().clone())
                };
                write!(f, "{num}/{den}")
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $q:expr, $m:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($q(a, b)),
                    (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q })
                        if p == q =>
                    {
                        Scalar::Residue {
                            value: $m(*a, *b, *p),
                            p: *p,
                        }
                    }
                    _ => panic!("scalar field mismatch: {self:?} vs {rhs:?}"),
                }
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}
