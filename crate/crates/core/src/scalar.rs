//! Exact scalar arithmetic over the two coefficient fields the engine
//! supports: the rationals and prime fields F_p.
//!
//! Rationals are arbitrary-precision reduced fractions; floating point is
//! never used.  Prime-field elements are canonical residues `0..p`.  Mixing
//! scalars from different fields is an error, surfaced through the checked
//! operations; the operator impls panic on a mismatch because within one
//! computation every scalar is built from a single [`FieldSpec`].

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient field selector: characteristic zero or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Builds the selector from a characteristic as written in input files:
    /// `0` for the rationals, a prime `p` for F_p.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            return Ok(FieldSpec::Rational);
        }
        if !is_prime(c) {
            return Err(Error::Field(format!("characteristic {c} is not prime")));
        }
        Ok(FieldSpec::Prime(c))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// Embeds an integer into the field.
    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    /// Embeds a fraction `num/den`.  In characteristic p the denominator is
    /// inverted mod p and must be nonzero there.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Field("zero denominator".into()));
        }
        match self {
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(_) => {
                let d = self.integer(den);
                let inv = d.inverse().ok_or_else(|| {
                    Error::Field(format!(
                        "denominator {den} is zero in characteristic {}",
                        self.characteristic()
                    ))
                })?;
                Ok(self.integer(num) * inv)
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the chosen coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Ok(Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            }),
            _ => Err(Error::MixedField(format!("{self} + {other}"))),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Ok(Scalar::Fp {
                    v: prod as u64,
                    p: *p,
                })
            }
            _ => Err(Error::MixedField(format!("{self} * {other}"))),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Fp { v, p } => {
                // Fermat: v^(p-2) mod p.
                let mut acc: u128 = 1;
                let mut base = *v as u128;
                let mut e = p - 2;
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(Scalar::Fp { v: acc as u64, p: *p })
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.try_add(&rhs).expect("scalar field mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.try_add(&rhs.neg()).expect("scalar field mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.try_mul(&rhs).expect("scalar field mismatch")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp { v: 0, p } => Scalar::Fp { v: 0, p },
            Scalar::Fp { v, p } => Scalar::Fp { v: p - v, p },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().magnitude(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
