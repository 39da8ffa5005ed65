//! Laurent polynomials in q over Q, stored as exponent -> coefficient maps.

use super::{CoeffError, Rat};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial sum_k c_k q^k with integer exponents and rational
/// coefficients. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q_pow(k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, Rat::one());
        LaurentPoly { terms }
    }

    pub fn from_rat(r: &Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r.clone());
        }
        LaurentPoly { terms }
    }

    pub fn monomial(c: &Rat, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c.clone());
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Smallest exponent with nonzero coefficient. None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.max_exp().map(|k| self.coeff(k)).unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.insert_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in self.terms.iter() {
            for (kb, cb) in rhs.terms.iter() {
                out.insert_term(ka + kb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Multiplication by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact evaluation at q = q0 (q0 may be any nonzero rational; negative
    /// exponents require q0 != 0).
    pub fn eval(&self, q0: &Rat) -> Result<Rat, CoeffError> {
        let mut acc = Rat::zero();
        for (k, c) in self.terms.iter() {
            if *k < 0 && q0.is_zero() {
                return Err(CoeffError::EvaluationPole);
            }
            acc = &acc + &(c * &q0.pow(*k));
        }
        Ok(acc)
    }

    /// Polynomial division with remainder; requires both operands to be
    /// ordinary polynomials (min exponent >= 0) and a nonzero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        debug_assert!(self.min_exp().unwrap_or(0) >= 0 && rhs.min_exp().unwrap_or(0) >= 0);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dlead = rhs.max_exp().unwrap();
        let dcoef = rhs.leading_coeff();
        while !rem.is_zero() && rem.max_exp().unwrap() >= dlead {
            let k = rem.max_exp().unwrap() - dlead;
            let c = Rat(rem.leading_coeff().0 / dcoef.0.clone());
            let t = LaurentPoly::monomial(&c, k);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(rhs));
        }
        (quot, rem)
    }

    /// Monic gcd of two ordinary polynomials (Euclid over Q[q]).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.leading_coeff();
        a.scale(&lc.recip().unwrap())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending exponents, e.g. "q^2 - 1" or "3/2*q^-1".
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.0.clone() < num_rational::BigRational::from_integer(0.into());
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let qpart = match *k {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if qpart.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{qpart}")?;
            } else {
                write!(f, "{mag}*{qpart}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn mul_and_display() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let a = q().sub(&LaurentPoly::q_pow(-1));
        let b = q().add(&LaurentPoly::q_pow(-1));
        let p = a.mul(&b);
        assert_eq!(p, LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2)));
        assert_eq!(p.to_string(), "q^2 - q^-2");
    }

    #[test]
    fn div_rem_exact() {
        // (q^2 - 1) / (q - 1) = q + 1
        let num = LaurentPoly::q_pow(2).sub(&LaurentPoly::one());
        let den = q().sub(&LaurentPoly::one());
        let (quot, rem) = num.div_rem(&den);
        assert!(rem.is_zero());
        assert_eq!(quot, q().add(&LaurentPoly::one()));
    }

    #[test]
    fn gcd_monic() {
        // gcd(q^2 - 1, q^2 + 2q + 1) = q + 1
        let a = LaurentPoly::q_pow(2).sub(&LaurentPoly::one());
        let b = LaurentPoly::q_pow(2)
            .add(&q().scale(&Rat::from_int(2)))
            .add(&LaurentPoly::one());
        assert_eq!(a.gcd(&b), q().add(&LaurentPoly::one()));
    }

    #[test]
    fn eval_laurent() {
        let p = q().sub(&LaurentPoly::q_pow(-1));
        assert_eq!(p.eval(&Rat::from_int(2)).unwrap(), Rat::new(3, 2));
    }
}
