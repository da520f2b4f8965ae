//! Replayable checks. Every claim a certificate makes is recorded as a
//! [`Check`] whose inputs are explicit, so a verifier can re-execute it
//! without trusting the run that produced it.
//!
//! Big integers and rationals are serialized as decimal strings ("a" or
//! "a/b"): JSON numbers cannot hold them.

use crate::arith::{self, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("malformed number {0:?}")]
    BadNumber(String),
    #[error("malformed place {0:?}")]
    BadPlace(String),
    #[error("check could not be executed: {0}")]
    Execution(String),
}

/// Serde adapter: `BigInt` as a decimal string field.
pub mod big_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(de)?;
        big_from_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Rat` as an `"a/b"` string field.
pub mod rat_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        rat_from_string(&s).map_err(serde::de::Error::custom)
    }
}

pub fn big_to_string(n: &BigInt) -> String {
    n.to_string()
}

pub fn big_from_string(s: &str) -> Result<BigInt, ReplayError> {
    BigInt::from_str(s).map_err(|_| ReplayError::BadNumber(s.to_string()))
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat, ReplayError> {
    match s.split_once('/') {
        None => Ok(Rat::from(big_from_string(s)?)),
        Some((n, d)) => {
            let den = big_from_string(d)?;
            if !den.is_positive() {
                return Err(ReplayError::BadNumber(s.to_string()));
            }
            Ok(Rat::new(big_from_string(n)?, den))
        }
    }
}

/// A place of the rationals, serialized as `"inf"` or the prime.
pub fn place_to_string(p: Option<u64>) -> String {
    match p {
        None => "inf".to_string(),
        Some(t) => t.to_string(),
    }
}

pub fn place_from_string(s: &str) -> Result<Option<u64>, ReplayError> {
    if s == "inf" {
        return Ok(None);
    }
    s.parse::<u64>().map(Some).map_err(|_| ReplayError::BadPlace(s.to_string()))
}

/// One machine-checkable assertion with all of its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// `jacobi(a, n) == expected`
    Jacobi { a: String, n: String, expected: i8 },
    /// `value mod modulus == residue` (least non-negative residue)
    CongruenceMod { value: String, modulus: u64, residue: u64 },
    /// `is_prime(n) == expected`
    IsPrime { n: String, expected: bool },
    /// `gcd(a, b) == 1`
    Coprime { a: String, b: String },
    /// `n` is squarefree given the listed known prime divisors
    Squarefree { n: String, known: Vec<u64> },
    /// `gcd(a, b) == expected`
    Gcd { a: String, b: String, expected: String },
    /// the homogeneous space `d W^2 = d^2 + c Z^4` (c = 8N for "C",
    /// c = -2N for "Cprime") has the recorded verdict at the place
    LocalSolvable { space: String, d: String, n: String, place: String, solvable: bool },
    /// `(x, y)` satisfies `y^2 = x^3 + a x` exactly
    PointOnCurve { a: String, x: String, y: String },
    /// `v_prime(x) == expected`
    Valuation { x: String, prime: u64, expected: i64 },
    /// the product of the factors equals `expected`
    ProductIs { factors: Vec<String>, expected: String },
}

/// A check labelled with the condition it certifies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub description: String,
    #[serde(flatten)]
    pub check: Check,
}

impl CheckRecord {
    pub fn new(description: impl Into<String>, check: Check) -> Self {
        CheckRecord { description: description.into(), check }
    }
}

/// Re-execute a single check from its recorded inputs.
pub fn replay(check: &Check) -> Result<bool, ReplayError> {
    match check {
        Check::Jacobi { a, n, expected } => {
            let a = big_from_string(a)?;
            let n = big_from_string(n)?;
            let got = arith::jacobi(&a, &n)
                .map_err(|e| ReplayError::Execution(e.to_string()))?;
            Ok(got == *expected)
        }
        Check::CongruenceMod { value, modulus, residue } => {
            let v = big_from_string(value)?;
            let m = BigInt::from(*modulus);
            Ok(v.mod_floor(&m).to_u64() == Some(*residue))
        }
        Check::IsPrime { n, expected } => {
            let n = big_from_string(n)?;
            Ok(arith::is_prime_big(&n) == *expected)
        }
        Check::Coprime { a, b } => {
            let a = big_from_string(a)?;
            let b = big_from_string(b)?;
            Ok(a.gcd(&b).is_one())
        }
        Check::Squarefree { n, known } => {
            let n = big_from_string(n)?;
            arith::is_squarefree(&n, known).map_err(|e| ReplayError::Execution(e.to_string()))
        }
        Check::Gcd { a, b, expected } => {
            let a = big_from_string(a)?;
            let b = big_from_string(b)?;
            let e = big_from_string(expected)?;
            Ok(a.gcd(&b) == e)
        }
        Check::LocalSolvable { space, d, n, place, solvable } => {
            let kind = match space.as_str() {
                "C" => crate::selmer::SpaceKind::CPhi,
                "Cprime" => crate::selmer::SpaceKind::CPhiHat,
                other => return Err(ReplayError::Execution(format!("unknown space {other}"))),
            };
            let d = big_from_string(d)?;
            let n = big_from_string(n)?;
            let place = place_from_string(place)?;
            let got = crate::selmer::local_solvable_values(kind, &d, &n, place)
                .map_err(|e| ReplayError::Execution(e.to_string()))?;
            Ok(got == *solvable)
        }
        Check::PointOnCurve { a, x, y } => {
            let a = Rat::from(big_from_string(a)?);
            let x = rat_from_string(x)?;
            let y = rat_from_string(y)?;
            Ok(&y * &y == &x * &x * &x + &a * &x)
        }
        Check::Valuation { x, prime, expected } => {
            let x = rat_from_string(x)?;
            if x.is_zero() {
                return Err(ReplayError::Execution("valuation of zero".into()));
            }
            Ok(arith::val(&x, *prime).finite() == *expected)
        }
        Check::ProductIs { factors, expected } => {
            let mut acc = BigInt::one();
            for f in factors {
                acc *= big_from_string(f)?;
            }
            Ok(acc == big_from_string(expected)?)
        }
    }
}

/// Replay a whole list; returns the first failing record, if any.
pub fn replay_all<'a>(
    records: &'a [CheckRecord],
) -> Result<Option<&'a CheckRecord>, ReplayError> {
    for rec in records {
        if !replay(&rec.check)? {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}
