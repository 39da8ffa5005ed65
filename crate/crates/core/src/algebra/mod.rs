//! The quantum projective space CP_q^{N-1} as a filtered quotient algebra,
//! plus the quantum sphere S_q^{2N-1} model it embeds into.
//!
//! Generators are x_ij, 1 <= i,j <= N. The defining relations are the two
//! R-matrix quadratic families
//!
//! ```text
//! RCPm^{stuv}_{ijkl} x_st x_uv = q^-1 x_ij x_kl
//! RCPc^{stuv}_{ijkl} x_st x_uv = q    x_ij x_kl
//! ```
//!
//! together with the weighted trace relation sum_i w(i) x_ii = 1. The weights
//! of the abbreviated sums are not printed in the source and are fixed by the
//! convention resolver (see [`crate::calculus::convention`]); the resolved
//! [`Convention`] is carried explicitly through every downstream formula.
//!
//! Because the trace relation mixes degrees, bases are built for filtered
//! "degree <= k" slices ([`QuotientBasis`]). The sphere submodule provides a
//! faithful model of the whole algebra through the embedding
//! x_ij -> z_i z*_j, which is what the calculus engine computes in.

pub mod linalg;
pub mod quotient;
pub mod sphere;

pub use quotient::{build_quotient, QuotientBasis};
pub use sphere::{build_sphere, SphereAlgebra, SphereElem, SphereMonomial};

use crate::coeff::Field;
use crate::rmatrix::RFamily;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quotient slice too large: estimated {candidates} candidate words, {rows} relation rows")]
    SliceTooLarge { candidates: usize, rows: usize },
    #[error("degree overflow: element degree {got} exceeds basis bound {bound}")]
    DegreeOverflow { got: usize, bound: u32 },
    #[error("convention unresolved: {0}")]
    ConventionUnresolved(String),
    #[error("sphere relations unresolved: {0}")]
    SphereUnresolved(String),
    #[error("internal rank defect: relation row with no candidate column")]
    RankDefect,
}

/// A generator x_ij.
pub type Gen = (u8, u8);

/// A monomial word in the generators; length = filtration degree.
pub type Word = SmallVec<[Gen; 6]>;

pub fn word(gens: &[Gen]) -> Word {
    gens.iter().copied().collect()
}

/// An algebra element with finite support on words.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgElem<E> {
    pub terms: BTreeMap<Word, E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> AlgElem<E> {
    pub fn zero() -> Self {
        AlgElem { terms: BTreeMap::new() }
    }

    pub fn unit<F: Field<E = E>>(f: &F) -> Self {
        let mut t = BTreeMap::new();
        t.insert(Word::new(), f.one());
        AlgElem { terms: t }
    }

    pub fn gen<F: Field<E = E>>(f: &F, g: Gen) -> Self {
        let mut t = BTreeMap::new();
        t.insert(word(&[g]), f.one());
        AlgElem { terms: t }
    }

    pub fn monomial(w: Word, c: E) -> Self {
        let mut t = BTreeMap::new();
        t.insert(w, c);
        AlgElem { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term<F: Field<E = E>>(&mut self, f: &F, w: Word, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<E = E>>(&self, f: &F, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(f, w.clone(), c.clone());
        }
        out
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return AlgElem::zero();
        }
        AlgElem {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn sub<F: Field<E = E>>(&self, f: &F, rhs: &Self) -> Self {
        self.add(f, &rhs.scale(f, &f.neg(&f.one())))
    }

    pub fn mul<F: Field<E = E>>(&self, f: &F, rhs: &Self) -> Self {
        let mut out = AlgElem::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                out.add_term(f, w, f.mul(ca, cb));
            }
        }
        out
    }
}

impl<E: std::fmt::Debug> fmt::Display for AlgElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws: Vec<String> = w.iter().map(|(i, j)| format!("x{i}{j}")).collect();
                if ws.is_empty() {
                    format!("({c:?})")
                } else {
                    format!("({c:?})*{}", ws.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The resolved weight conventions for the abbreviated sums and delta terms.
///
/// Weight laws are q-powers linear in the summation index: the left sum
/// carries q^{sum_l_slope * j}, the right sum q^{sum_r_slope * i}, the delta
/// terms of ansatz and relations q^{delta_slope * j}, and the invariant
/// one-form H = sum q^{h_slope * j} x_ij dx_ji. `implied_qexp` is the q-power
/// lambda in the derived relation sum_L_j x_ij x_jk = lambda x_ik.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub sum_l_slope: i64,
    pub sum_r_slope: i64,
    pub delta_slope: i64,
    pub h_slope: i64,
    pub implied_qexp: i64,
}

impl Convention {
    /// The convention resolved by [`crate::calculus::convention::resolve_convention`];
    /// constructing it directly is useful for tests.
    pub fn resolved() -> Self {
        Convention {
            sum_l_slope: -2,
            sum_r_slope: 0,
            delta_slope: 2,
            h_slope: -2,
            implied_qexp: -2,
        }
    }

    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(
            serde_json::to_vec(self).expect("convention serialises"),
        );
        hex::encode(&h.finalize()[..8])
    }
}

/// The defining relations of CP_q^{N-1} at a given N, as elements whose
/// normal form must vanish (the trace relation includes the -1 term).
pub fn cp_relations<F: Field>(
    f: &F,
    fam: &RFamily<F::E>,
    conv: &Convention,
) -> Vec<AlgElem<F::E>> {
    let n = fam.n;
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    for (tensor, eig) in [(&fam.rcpm, f.q_pow(-1)), (&fam.rcpc, f.q_pow(1))] {
                        let mut e = AlgElem::zero();
                        for (idx, c) in tensor.entries() {
                            if idx[4] as u8 == i as u8
                                && idx[5] as u8 == j as u8
                                && idx[6] as u8 == k as u8
                                && idx[7] as u8 == l as u8
                            {
                                let w = word(&[
                                    (idx[0] as u8, idx[1] as u8),
                                    (idx[2] as u8, idx[3] as u8),
                                ]);
                                e.add_term(f, w, c.clone());
                            }
                        }
                        let w = word(&[(i as u8, j as u8), (k as u8, l as u8)]);
                        e.add_term(f, w, f.neg(&eig));
                        if !e.is_zero() {
                            rels.push(e);
                        }
                    }
                }
            }
        }
    }
    // Weighted trace relation: sum_i q^{slope*i} x_ii - 1.
    let mut tr = AlgElem::zero();
    for i in 1..=n {
        tr.add_term(
            f,
            word(&[(i as u8, i as u8)]),
            f.q_pow(conv.sum_r_slope * i as i64),
        );
    }
    tr.add_term(f, Word::new(), f.neg(&f.one()));
    rels.push(tr);
    rels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField};
    use crate::rmatrix::build_family;

    #[test]
    fn relation_count_before_reduction() {
        // 2 N^4 quadratic candidates plus the trace relation; a handful of
        // index tuples give the zero element and are dropped.
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let fam = build_family(&f, 2).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        assert!(rels.len() <= 2 * 16 + 1);
        assert!(rels.len() > 16);
    }

    #[test]
    fn alg_elem_product_concatenates() {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let a = AlgElem::gen(&f, (1, 2));
        let b = AlgElem::gen(&f, (2, 1));
        let p = a.mul(&f, &b);
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn convention_fingerprint_stable() {
        let c = Convention::resolved();
        assert_eq!(c.fingerprint(), c.fingerprint());
        let mut c2 = c.clone();
        c2.delta_slope = -2;
        assert_ne!(c.fingerprint(), c2.fingerprint());
    }
}
