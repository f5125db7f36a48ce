//! Exact scalar fields: the rationals and prime fields.
//!
//! Every scalar is stored as a [`BigRational`]. Over a prime field the stored
//! value is always a reduced residue `0 <= r < p` with denominator one, so
//! equality of stored scalars is equality in the field.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse field `{0}` (expected `Q` or `Fp:<p>`)")]
    BadFieldLiteral(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("denominator of {0} is not invertible mod {1}")]
    NotInvertible(String, u64),
}

/// The field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldTag {
    Rationals,
    PrimeField(u64),
}

impl Default for FieldTag {
    fn default() -> Self {
        FieldTag::Rationals
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTag {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldTag::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rationals => 0,
            FieldTag::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldTag::Rationals => Scalar::from_integer(BigInt::from(v)),
            FieldTag::PrimeField(p) => {
                Scalar::from_integer(BigInt::from(v.rem_euclid(*p as i64)))
            }
        }
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn normalize(&self, v: &Scalar) -> Result<Scalar, FieldError> {
        match self {
            FieldTag::Rationals => Ok(v.clone()),
            FieldTag::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let num = v.numer().mod_floor(&p_big);
                let den = v.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(FieldError::NotInvertible(v.to_string(), *p));
                }
                let den_inv = mod_inverse(den.to_u64().unwrap(), *p);
                let r = (num * BigInt::from(den_inv)).mod_floor(&p_big);
                Ok(Scalar::from_integer(r))
            }
        }
    }

    fn reduce_int(&self, v: Scalar) -> Scalar {
        match self {
            FieldTag::Rationals => v,
            FieldTag::PrimeField(p) => {
                Scalar::from_integer(v.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce_int(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce_int(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            FieldTag::Rationals => Some(a.recip()),
            FieldTag::PrimeField(p) => {
                let r = a.to_integer().to_u64().unwrap();
                Some(Scalar::from_integer(BigInt::from(mod_inverse(r, *p))))
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let v = parse_rational(s)?;
        self.normalize(&v)
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Parses `n` or `n/d` into a rational.
pub fn parse_rational(s: &str) -> Result<Scalar, FieldError> {
    let t = s.trim();
    let bad = || FieldError::BadScalar(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Formats a scalar as `num/den` (or `num` when integral).
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldTag::Rationals);
        }
        if let Some(p) = t.strip_prefix("Fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| FieldError::BadFieldLiteral(s.to_string()))?;
            return FieldTag::prime(p);
        }
        Err(FieldError::BadFieldLiteral(s.to_string()))
    }
}

impl TryFrom<String> for FieldTag {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FieldTag> for String {
    fn from(f: FieldTag) -> String {
        f.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_literals() {
        assert_eq!("Q".parse::<FieldTag>().unwrap(), FieldTag::Rationals);
        assert_eq!("Fp:7".parse::<FieldTag>().unwrap(), FieldTag::PrimeField(7));
        assert_eq!("Fp:8".parse::<FieldTag>(), Err(FieldError::NotPrime(8)));
        assert!("R".parse::<FieldTag>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldTag::PrimeField(7);
        let three = f.from_i64(3);
        let five = f.from_i64(5);
        assert_eq!(f.add(&three, &five), f.from_i64(1));
        assert_eq!(f.mul(&three, &five), f.from_i64(1));
        assert_eq!(f.inv(&three).unwrap(), five);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_scalar("1/7").is_err());
    }

    #[test]
    fn rational_parse_and_format() {
        let q = FieldTag::Rationals;
        let v = q.parse_scalar("-6/4").unwrap();
        assert_eq!(format_scalar(&v), "-3/2");
        assert_eq!(format_scalar(&q.from_i64(5)), "5");
        assert!(parse_rational("1/0").is_err());
    }
}
