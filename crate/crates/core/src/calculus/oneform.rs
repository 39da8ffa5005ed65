//! One-form elements with coefficients in sphere coordinates.
//!
//! An element of the left module is stored as sum_{uv} w_uv dx_uv + w_H H,
//! with each coefficient a normalized sphere element. The trace condition
//! sum_i dx_ii = 0 is built into the representation: the component dx_NN is
//! eliminated on insertion, so the dx index set is all pairs except (N, N).
//! The invariant one-form H is kept as a separate atom; [`OneForm::expand_h`]
//! replaces it by its definition sum q^{h j} x_ij dx_ji for the honest
//! checks.

use crate::algebra::sphere::{elem_add, elem_scale, SphereAlgebra, SphereElem};
use crate::algebra::{word, Convention};
use crate::coeff::Field;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<E> {
    pub dx: BTreeMap<(u8, u8), SphereElem<E>>,
    pub h: SphereElem<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> OneForm<E> {
    pub fn zero() -> Self {
        OneForm { dx: BTreeMap::new(), h: SphereElem::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.dx.values().all(|e| e.is_empty()) && self.h.is_empty()
    }

    /// Add `coeff * dx_uv`, eliminating dx_NN through the trace condition.
    pub fn add_dx<F: Field<E = E>>(
        &mut self,
        sph: &SphereAlgebra<F>,
        uv: (u8, u8),
        coeff: &SphereElem<E>,
    ) {
        let f = &sph.field;
        let n = sph.n as u8;
        if uv == (n, n) {
            let neg = elem_scale(f, coeff, &f.neg(&f.one()));
            for i in 1..n {
                let slot = self.dx.entry((i, i)).or_default();
                *slot = elem_add(f, slot, &neg);
            }
        } else {
            let slot = self.dx.entry(uv).or_default();
            *slot = elem_add(f, slot, coeff);
        }
        self.dx.retain(|_, e| !e.is_empty());
    }

    pub fn add_h<F: Field<E = E>>(&mut self, sph: &SphereAlgebra<F>, coeff: &SphereElem<E>) {
        self.h = elem_add(&sph.field, &self.h, coeff);
    }

    pub fn add_form<F: Field<E = E>>(&mut self, sph: &SphereAlgebra<F>, rhs: &Self) {
        let f = &sph.field;
        for (uv, e) in &rhs.dx {
            let slot = self.dx.entry(*uv).or_default();
            *slot = elem_add(f, slot, e);
        }
        self.dx.retain(|_, e| !e.is_empty());
        self.h = elem_add(f, &self.h, &rhs.h);
    }

    pub fn scale<F: Field<E = E>>(&self, sph: &SphereAlgebra<F>, c: &E) -> Self {
        let f = &sph.field;
        OneForm {
            dx: self
                .dx
                .iter()
                .map(|(uv, e)| (*uv, elem_scale(f, e, c)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
            h: elem_scale(f, &self.h, c),
        }
    }

    pub fn add_scaled<F: Field<E = E>>(&mut self, sph: &SphereAlgebra<F>, rhs: &Self, c: &E) {
        if sph.field.is_zero(c) {
            return;
        }
        let scaled = rhs.scale(sph, c);
        self.add_form(sph, &scaled);
    }

    /// Left-multiply every coefficient by a normalized sphere element.
    pub fn left_mul<F: Field<E = E>>(&self, sph: &SphereAlgebra<F>, m: &SphereElem<E>) -> Self {
        OneForm {
            dx: self
                .dx
                .iter()
                .map(|(uv, e)| (*uv, sph.mul_elems(m, e)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
            h: sph.mul_elems(m, &self.h),
        }
    }

    /// Replace the H atom by its expansion sum_{a,b} q^{h b} x_ab dx_ba.
    pub fn expand_h<F: Field<E = E>>(&self, sph: &SphereAlgebra<F>, conv: &Convention) -> Self {
        if self.h.is_empty() {
            return self.clone();
        }
        let f = &sph.field;
        let mut out = OneForm { dx: self.dx.clone(), h: SphereElem::new() };
        for a in 1..=sph.n as u8 {
            for b in 1..=sph.n as u8 {
                let xab = sph.embed_word(&word(&[(a, b)]));
                let coeff = sph.mul_elems(&self.h, &xab);
                let coeff = elem_scale(f, &coeff, &f.q_pow(conv.h_slope * b as i64));
                out.add_dx(sph, (b, a), &coeff);
            }
        }
        out
    }

    /// The bare generator one-form dx_ij (with the trace elimination applied).
    pub fn bare_dx<F: Field<E = E>>(sph: &SphereAlgebra<F>, uv: (u8, u8)) -> Self {
        let mut out = OneForm::zero();
        let one = {
            let mut e = SphereElem::new();
            e.insert(crate::algebra::sphere::SphereMonomial::one(sph.n), sph.field.one());
            e
        };
        out.add_dx(sph, uv, &one);
        out
    }
}
