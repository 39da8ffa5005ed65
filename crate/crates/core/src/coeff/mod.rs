//! Exact arithmetic: rationals, Laurent polynomials in q, and the field Q(q).
//!
//! All downstream computation runs in one of two modes:
//!
//! - SYMBOLIC: scalars are [`QScalar`], reduced fractions of Laurent
//!   polynomials in q over Q.
//! - SAMPLED: scalars are [`Rat`], obtained by evaluating every q-dependent
//!   quantity at a rational sample point q0 (excluded values 0, 1, -1).
//!
//! Generic code is written against the [`Field`] trait, which supplies the
//! arithmetic and the element `q^k`; [`SymbolicField`] and [`SampledField`]
//! are the two implementations. [`param::ParamField`] lifts any field to
//! polynomials in a set of named unknowns, which is how the solver carries
//! the ansatz coefficients through expansions.

mod laurent;
mod qscalar;
mod field;
pub mod param;

pub use laurent::LaurentPoly;
pub use qscalar::QScalar;
pub use field::{Field, SymbolicField, SampledField};
pub use param::{ParamField, ParamPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation pole")]
    EvaluationPole,
    #[error("excluded parameter")]
    ExcludedParameter,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Arbitrary-precision rational with reduced representation and positive
/// denominator (maintained by `num_rational`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Rat::one();
        }
        let base = if k < 0 {
            self.recip().expect("zero base with negative exponent")
        } else {
            self.clone()
        };
        let mut acc = Rat::one();
        for _ in 0..k.unsigned_abs() {
            acc = Rat(&acc.0 * &base.0);
        }
        acc
    }

    /// True when the value is one of the excluded deformation parameters
    /// 0, 1, -1.
    pub fn is_excluded_q(&self) -> bool {
        self.is_zero() || self.0.abs().is_one()
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        let r = BigRational::from_str(s).map_err(|e| CoeffError::Parse(format!("{s:?}: {e}")))?;
        Ok(Rat(r))
    }
}

impl std::ops::Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_roundtrip() {
        let r = Rat::new(-7, 12);
        assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }

    #[test]
    fn rat_pow_negative() {
        let r = Rat::new(3, 2);
        assert_eq!(r.pow(-2), Rat::new(4, 9));
    }

    #[test]
    fn excluded_q_values() {
        assert!(Rat::from_int(0).is_excluded_q());
        assert!(Rat::from_int(1).is_excluded_q());
        assert!(Rat::from_int(-1).is_excluded_q());
        assert!(!Rat::new(3, 2).is_excluded_q());
    }
}
