//! Polynomial extension of a field by named unknowns.
//!
//! The solver carries the ansatz coefficients through tensor contractions and
//! normal forms symbolically: scalars become polynomials in the unknowns with
//! coefficients in the base field. Degrees stay small (linear for the
//! single-expansion conditions, quadratic for the cubic conditions), so a
//! sparse monomial map is sufficient.

use super::{Field, Rat};
use smallvec::SmallVec;
use std::collections::BTreeMap;

pub type Exps = SmallVec<[u8; 8]>;

/// A polynomial in the extension unknowns over base-field elements.
///
/// Keys are exponent vectors of length `nvars`; absent keys are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamPoly<E> {
    pub terms: BTreeMap<Exps, E>,
}

impl<E: Clone> ParamPoly<E> {
    pub fn constant_term(&self, nvars: usize) -> Option<&E> {
        let key: Exps = std::iter::repeat(0u8).take(nvars).collect();
        self.terms.get(&key)
    }

    /// Total degree in the unknowns (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Decompose an affine polynomial as (constant, linear coefficients per
    /// variable). None if any term has degree > 1.
    pub fn as_affine(&self, nvars: usize) -> Option<(Option<&E>, Vec<(usize, &E)>)> {
        let mut constant = None;
        let mut linear = Vec::new();
        for (exps, c) in &self.terms {
            let total: u32 = exps.iter().map(|&e| e as u32).sum();
            match total {
                0 => constant = Some(c),
                1 => {
                    let var = exps.iter().position(|&e| e == 1).unwrap();
                    linear.push((var, c));
                }
                _ => return None,
            }
        }
        let _ = nvars;
        Some((constant, linear))
    }
}

/// The extension ring `base[x_0, ..., x_{nvars-1}]` as a [`Field`]
/// implementation. Inversion is defined only for nonzero constants.
#[derive(Clone)]
pub struct ParamField<F: Field> {
    pub base: F,
    pub nvars: usize,
    pub names: Vec<String>,
}

impl<F: Field> ParamField<F> {
    pub fn new(base: F, names: Vec<String>) -> Self {
        ParamField { base, nvars: names.len(), names }
    }

    fn zero_exps(&self) -> Exps {
        std::iter::repeat(0u8).take(self.nvars).collect()
    }

    pub fn constant(&self, c: F::E) -> ParamPoly<F::E> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(self.zero_exps(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(&self, i: usize) -> ParamPoly<F::E> {
        assert!(i < self.nvars);
        let mut exps = self.zero_exps();
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, self.base.one());
        ParamPoly { terms }
    }

    /// Substitute affine expressions (over the same variable set) for each
    /// variable. Used when re-parameterising a partially solved system.
    pub fn substitute(
        &self,
        p: &ParamPoly<F::E>,
        subs: &[ParamPoly<F::E>],
    ) -> ParamPoly<F::E> {
        assert_eq!(subs.len(), self.nvars);
        let mut acc = self.zero();
        for (exps, c) in &p.terms {
            let mut term = self.constant(c.clone());
            for (var, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = self.mul(&term, &subs[var]);
                }
            }
            acc = self.add(&acc, &term);
        }
        acc
    }

    pub fn render_poly(&self, p: &ParamPoly<F::E>) -> String {
        if p.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (exps, c) in &p.terms {
            let mut s = format!("({})", self.base.render(c));
            for (var, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{}", self.names[var])),
                    _ => s.push_str(&format!("*{}^{}", self.names[var], e)),
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl<F: Field> Field for ParamField<F> {
    type E = ParamPoly<F::E>;

    fn zero(&self) -> Self::E {
        ParamPoly { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::E {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::E) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let mut out = a.terms.clone();
        for (exps, c) in &b.terms {
            match out.entry(exps.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = self.base.add(e.get(), c);
                    if self.base.is_zero(&s) {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        ParamPoly { terms: out }
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::E) -> Self::E {
        ParamPoly {
            terms: a
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let mut out: BTreeMap<Exps, F::E> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let prod = self.base.mul(ca, cb);
                match out.entry(exps) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !self.base.is_zero(&prod) {
                            e.insert(prod);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = self.base.add(e.get(), &prod);
                        if self.base.is_zero(&s) {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        ParamPoly { terms: out }
    }

    fn inv(&self, a: &Self::E) -> Option<Self::E> {
        if a.terms.len() != 1 {
            return None;
        }
        let (exps, c) = a.terms.iter().next().unwrap();
        if exps.iter().any(|&e| e != 0) {
            return None;
        }
        self.base.inv(c).map(|ic| self.constant(ic))
    }

    fn q_pow(&self, k: i64) -> Self::E {
        self.constant(self.base.q_pow(k))
    }

    fn from_rat(&self, r: &Rat) -> Self::E {
        self.constant(self.base.from_rat(r))
    }

    fn render(&self, a: &Self::E) -> String {
        self.render_poly(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::SymbolicField;

    #[test]
    fn param_arith() {
        let f = ParamField::new(SymbolicField, vec!["a".into(), "b".into()]);
        let a = f.var(0);
        let b = f.var(1);
        // (a + b)^2 = a^2 + 2ab + b^2
        let s = f.add(&a, &b);
        let sq = f.mul(&s, &s);
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.terms.len(), 3);
        // only constants invert
        assert!(f.inv(&a).is_none());
        assert!(f.inv(&f.q_pow(3)).is_some());
    }

    #[test]
    fn affine_decomposition() {
        let f = ParamField::new(SymbolicField, vec!["a".into(), "b".into()]);
        let e = f.add(&f.mul(&f.q_pow(2), &f.var(1)), &f.one());
        let (c, lin) = e.as_affine(2).unwrap();
        assert!(c.is_some());
        assert_eq!(lin.len(), 1);
        assert_eq!(lin[0].0, 1);
    }
}
