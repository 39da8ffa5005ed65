//! The field Q(q) of rational functions in the deformation parameter.

use super::laurent::LaurentPoly;
use super::{CoeffError, Rat};
use std::fmt;

/// A reduced fraction of Laurent polynomials in q.
///
/// Canonical form: the denominator is an ordinary polynomial (minimal
/// exponent zero) and monic; numerator and denominator are coprime after
/// clearing the numerator's q-power. Equality is structural and agrees with
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    fn canon(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QScalar { num, den: LaurentPoly::one() };
        }
        // Shift both by the denominator's minimal exponent so den is ordinary.
        let dshift = den.min_exp().unwrap();
        let mut num = num.shift(-dshift);
        let mut den = den.shift(-dshift);
        // Clear the numerator's q-power, reduce, restore.
        let nshift = num.min_exp().unwrap();
        let num0 = num.shift(-nshift);
        let g = num0.gcd(&den);
        if g.max_exp() != Some(0) || !g.leading_coeff().is_one() {
            let (n1, nr) = num0.div_rem(&g);
            let (d1, dr) = den.div_rem(&g);
            debug_assert!(nr.is_zero() && dr.is_zero());
            num = n1.shift(nshift);
            den = d1;
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn from_rat(r: &Rat) -> Self {
        Self::from_poly(LaurentPoly::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &QScalar::one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::canon(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::canon(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::canon(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::canon(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if rhs.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::canon(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::canon(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self, CoeffError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = QScalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact rational value at q = q0. Errors on the excluded parameters
    /// 0, 1, -1 and on poles of the denominator.
    pub fn eval(&self, q0: &Rat) -> Result<Rat, CoeffError> {
        if q0.is_excluded_q() {
            return Err(CoeffError::ExcludedParameter);
        }
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(CoeffError::EvaluationPole);
        }
        let n = self.num.eval(q0)?;
        Ok(Rat(n.0 / d.0))
    }

    /// Parse the rendered grammar, e.g. `(q^2 - 1)/(q^2 + 1)` or `q - q^-1`.
    pub fn parse(input: &str) -> Result<Self, CoeffError> {
        parse::parse(input)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let den = if self.den.num_terms() > 1 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        QScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

mod parse {
    //! Recursive-descent parser for the rendered QScalar grammar:
    //! expr := term (('+'|'-') term)*
    //! term := factor (('*'|'/') factor)*
    //! factor := '-'* atom ('^' int)?
    //! atom := integer | 'q' | '(' expr ')'

    use super::{CoeffError, QScalar};

    struct P<'a> {
        s: &'a [u8],
        i: usize,
    }

    pub fn parse(input: &str) -> Result<QScalar, CoeffError> {
        let mut p = P { s: input.as_bytes(), i: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(CoeffError::Parse(format!(
                "trailing input at byte {}: {:?}",
                p.i, input
            )));
        }
        Ok(v)
    }

    impl<'a> P<'a> {
        fn skip_ws(&mut self) {
            while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
                self.i += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.i).copied()
        }

        fn expr(&mut self) -> Result<QScalar, CoeffError> {
            let mut acc = self.term()?;
            loop {
                match self.peek() {
                    Some(b'+') => {
                        self.i += 1;
                        acc = acc.add(&self.term()?);
                    }
                    Some(b'-') => {
                        self.i += 1;
                        acc = acc.sub(&self.term()?);
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<QScalar, CoeffError> {
            let mut acc = self.factor()?;
            loop {
                match self.peek() {
                    Some(b'*') => {
                        self.i += 1;
                        acc = acc.mul(&self.factor()?);
                    }
                    Some(b'/') => {
                        self.i += 1;
                        acc = acc.div(&self.factor()?)?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn factor(&mut self) -> Result<QScalar, CoeffError> {
            let mut neg = false;
            while self.peek() == Some(b'-') {
                self.i += 1;
                neg = !neg;
            }
            let mut v = self.atom()?;
            if self.peek() == Some(b'^') {
                self.i += 1;
                let k = self.int()?;
                v = v.pow(k)?;
            }
            if neg {
                v = v.neg();
            }
            Ok(v)
        }

        fn atom(&mut self) -> Result<QScalar, CoeffError> {
            match self.peek() {
                Some(b'q') => {
                    self.i += 1;
                    Ok(QScalar::q())
                }
                Some(b'(') => {
                    self.i += 1;
                    let v = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(CoeffError::Parse("expected ')'".into()));
                    }
                    self.i += 1;
                    Ok(v)
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.int()?;
                    Ok(QScalar::from_int(n))
                }
                other => Err(CoeffError::Parse(format!("unexpected token {other:?}"))),
            }
        }

        fn int(&mut self) -> Result<i64, CoeffError> {
            self.skip_ws();
            let mut sign = 1i64;
            if self.s.get(self.i) == Some(&b'-') {
                sign = -1;
                self.i += 1;
            }
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if start == self.i {
                return Err(CoeffError::Parse("expected integer".into()));
            }
            let digits = std::str::from_utf8(&self.s[start..self.i]).unwrap();
            digits
                .parse::<i64>()
                .map(|v| sign * v)
                .map_err(|e| CoeffError::Parse(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    #[test]
    fn polynomial_identity() {
        // (q - q^-1) * (q + q^-1) = q^2 - q^-2
        let lhs = q().sub(&QScalar::q_pow(-1)).mul(&q().add(&QScalar::q_pow(-1)));
        let rhs = QScalar::q_pow(2).sub(&QScalar::q_pow(-2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn splus_n2_via_add() {
        // s+(N=2) = 1 + q^2
        let s = QScalar::one().add(&QScalar::q_pow(2));
        assert_eq!(s, QScalar::parse("1 + q^2").unwrap());
    }

    #[test]
    fn div_by_siplus_n2() {
        // si+ = s+ - 1 = q^2 at N=2, so 1/si+ = q^-2
        let siplus = QScalar::one().add(&QScalar::q_pow(2)).sub(&QScalar::one());
        assert_eq!(QScalar::one().div(&siplus).unwrap(), QScalar::q_pow(-2));
    }

    #[test]
    fn division_by_zero_reports() {
        assert_eq!(
            QScalar::one().div(&QScalar::zero()),
            Err(CoeffError::ZeroDenominator)
        );
    }

    #[test]
    fn eval_examples() {
        // eval(q - q^-1, 2) = 3/2
        let a = q().sub(&QScalar::q_pow(-1));
        assert_eq!(a.eval(&Rat::from_int(2)).unwrap(), Rat::new(3, 2));
        // eval(s+ at N=3, 2) = 1 + 4 + 16 = 21
        let s3 = QScalar::one().add(&QScalar::q_pow(2)).add(&QScalar::q_pow(4));
        assert_eq!(s3.eval(&Rat::from_int(2)).unwrap(), Rat::from_int(21));
        // eval at q = 1 is excluded
        assert_eq!(a.eval(&Rat::from_int(1)), Err(CoeffError::ExcludedParameter));
    }

    #[test]
    fn eval_pole() {
        // 1/(q - 2) has a pole at q0 = 2
        let v = QScalar::one().div(&q().sub(&QScalar::from_int(2))).unwrap();
        assert_eq!(v.eval(&Rat::from_int(2)), Err(CoeffError::EvaluationPole));
    }

    #[test]
    fn canonical_fraction_rendering() {
        let v = QScalar::parse("(q^2 - 1)/(q^2 + 1)").unwrap();
        assert_eq!(v.to_string(), "(q^2 - 1)/(q^2 + 1)");
        let roundtrip = QScalar::parse(&v.to_string()).unwrap();
        assert_eq!(roundtrip, v);
    }

    #[test]
    fn canonicalisation_reduces() {
        // (q^3 - q)/(q^2 - 1) = q
        let v = QScalar::parse("(q^3 - q)/(q^2 - 1)").unwrap();
        assert_eq!(v, q());
    }

    #[test]
    fn cancel_product_then_divide() {
        let a = QScalar::parse("(q^2 - 1)/(q^4 + q)").unwrap();
        let b = QScalar::parse("q^-3 + 7").unwrap();
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }
}
