//! The field abstraction shared by symbolic and sampled computation.

use super::{CoeffError, QScalar, Rat};
use std::fmt::Debug;

/// A computational field containing the deformation parameter q.
///
/// Implementations carry whatever context is needed to produce `q^k` as an
/// element; generic code threads a field handle rather than constructing
/// scalars directly.
pub trait Field: Clone + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// None for zero (or for non-invertible elements of extension rings).
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn q_pow(&self, k: i64) -> Self::E;
    fn from_rat(&self, r: &Rat) -> Self::E;
    fn render(&self, a: &Self::E) -> String;

    fn div(&self, a: &Self::E, b: &Self::E) -> Result<Self::E, CoeffError> {
        let ib = self.inv(b).ok_or(CoeffError::ZeroDenominator)?;
        Ok(self.mul(a, &ib))
    }

    fn from_int(&self, n: i64) -> Self::E {
        self.from_rat(&Rat::from_int(n))
    }

    fn add_assign(&self, a: &mut Self::E, b: &Self::E) {
        *a = self.add(a, b);
    }

    /// c * q^k as a single element.
    fn rat_q_pow(&self, c: &Rat, k: i64) -> Self::E {
        self.mul(&self.from_rat(c), &self.q_pow(k))
    }
}

/// Symbolic mode: elements are reduced fractions in Q(q).
#[derive(Clone, Debug, Default)]
pub struct SymbolicField;

impl Field for SymbolicField {
    type E = QScalar;

    fn zero(&self) -> QScalar {
        QScalar::zero()
    }
    fn one(&self) -> QScalar {
        QScalar::one()
    }
    fn is_zero(&self, a: &QScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QScalar, b: &QScalar) -> QScalar {
        a.add(b)
    }
    fn sub(&self, a: &QScalar, b: &QScalar) -> QScalar {
        a.sub(b)
    }
    fn neg(&self, a: &QScalar) -> QScalar {
        a.neg()
    }
    fn mul(&self, a: &QScalar, b: &QScalar) -> QScalar {
        a.mul(b)
    }
    fn inv(&self, a: &QScalar) -> Option<QScalar> {
        a.inv().ok()
    }
    fn q_pow(&self, k: i64) -> QScalar {
        QScalar::q_pow(k)
    }
    fn from_rat(&self, r: &Rat) -> QScalar {
        QScalar::from_rat(r)
    }
    fn render(&self, a: &QScalar) -> String {
        a.to_string()
    }
}

/// Sampled mode: all q-dependent scalars are evaluated at a fixed rational
/// sample q0 (0 and +-1 excluded by the paper's standing assumption).
#[derive(Clone, Debug)]
pub struct SampledField {
    q0: Rat,
}

impl SampledField {
    pub fn new(q0: Rat) -> Result<Self, CoeffError> {
        if q0.is_excluded_q() {
            return Err(CoeffError::ExcludedParameter);
        }
        Ok(SampledField { q0 })
    }

    pub fn q0(&self) -> &Rat {
        &self.q0
    }
}

impl Field for SampledField {
    type E = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        a.recip()
    }
    fn q_pow(&self, k: i64) -> Rat {
        self.q0.pow(k)
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn render(&self, a: &Rat) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_rejects_excluded() {
        assert!(SampledField::new(Rat::from_int(1)).is_err());
        assert!(SampledField::new(Rat::from_int(0)).is_err());
        assert!(SampledField::new(Rat::new(3, 2)).is_ok());
    }

    #[test]
    fn eval_is_field_hom() {
        // Specialising the symbolic field at q0 commutes with arithmetic.
        let sym = SymbolicField;
        let smp = SampledField::new(Rat::new(3, 2)).unwrap();
        let a = QScalar::parse("(q^2 - 1)/(q + 2)").unwrap();
        let b = QScalar::parse("q^-3 + 1/2").unwrap();
        let q0 = Rat::new(3, 2);
        for (s, r) in [
            (sym.add(&a, &b), smp.add(&a.eval(&q0).unwrap(), &b.eval(&q0).unwrap())),
            (sym.mul(&a, &b), smp.mul(&a.eval(&q0).unwrap(), &b.eval(&q0).unwrap())),
        ] {
            assert_eq!(s.eval(&q0).unwrap(), r);
        }
    }
}
