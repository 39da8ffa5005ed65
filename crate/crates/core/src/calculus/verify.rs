//! Verification of instantiated calculi against the necessary conditions.
//!
//! The free calculus is checked in the free module: every condition residual
//! (with H expanded) must vanish identically. The restricted calculi are
//! checked modulo the submodule W generated by the left multiples of their
//! constraint relation (and of H itself when H = 0 is imposed): residuals
//! must reduce to zero against an explicit echelon of W generators. All
//! reductions run in sphere coordinates, so no degree bound beyond the
//! generator padding enters.

use super::conditions::{Condition, DxExpander, RelationData};
use super::engine::{Engine, NUM_TERMS};
use super::oneform::OneForm;
use super::values::{published_coefficients, published_relation, CalculusId};
use crate::algebra::linalg::{Col, Echelon, SparseRow};
use crate::algebra::sphere::SphereMonomial;
use crate::algebra::{AlgebraError, Word};
use crate::coeff::Field;
use crate::report::{ConditionResult, FactorizationReport, VerifyReport};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

/// Expander for a concrete coefficient vector.
pub struct AnsatzExpander<E> {
    pub coeffs: Vec<E>,
    cache: RefCell<HashMap<[u8; 4], OneForm<E>>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> AnsatzExpander<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), NUM_TERMS);
        AnsatzExpander { coeffs, cache: RefCell::new(HashMap::new()) }
    }
}

impl<F: Field> DxExpander<F> for AnsatzExpander<F::E> {
    fn expand(&self, eng: &Engine<F>, i: u8, j: u8, k: u8, l: u8) -> OneForm<F::E> {
        if let Some(hit) = self.cache.borrow().get(&[i, j, k, l]) {
            return hit.clone();
        }
        let mut out = OneForm::zero();
        for (t, c) in self.coeffs.iter().enumerate() {
            if eng.field.is_zero(c) {
                continue;
            }
            out.add_scaled(&eng.sphere, &eng.term_shape(t, i, j, k, l), c);
        }
        self.cache.borrow_mut().insert([i, j, k, l], out.clone());
        out
    }
}

/// Assigns stable columns to (atom, monomial) pairs.
pub struct Vectorizer {
    mono_ids: RefCell<BTreeMap<SphereMonomial, u64>>,
}

const H_ATOM: u64 = 0xffff;

impl Vectorizer {
    pub fn new() -> Self {
        Vectorizer { mono_ids: RefCell::new(BTreeMap::new()) }
    }

    fn mono_id(&self, m: &SphereMonomial) -> u64 {
        let mut ids = self.mono_ids.borrow_mut();
        let next = ids.len() as u64;
        *ids.entry(m.clone()).or_insert(next)
    }

    pub fn vectorize<F: Field>(&self, f: &F, form: &OneForm<F::E>) -> SparseRow<F::E> {
        let mut cols: Vec<(Col, F::E)> = Vec::new();
        for (uv, e) in &form.dx {
            let atom = (uv.0 as u64) << 8 | uv.1 as u64;
            for (m, c) in e {
                cols.push(((atom << 40) | self.mono_id(m), c.clone()));
            }
        }
        for (m, c) in &form.h {
            cols.push(((H_ATOM << 40) | self.mono_id(m), c.clone()));
        }
        SparseRow::from_unsorted(f, cols)
    }
}

impl Default for Vectorizer {
    fn default() -> Self {
        Self::new()
    }
}

/// Representative words spanning the quotient slice of degree <= d, found by
/// rank completion in sphere coordinates.
pub fn spanning_words<F: Field>(eng: &Engine<F>, d: u32) -> Vec<Word> {
    let f = &eng.field;
    let mut ech: Echelon<F> = Echelon::new(f.clone());
    let vz = Vectorizer::new();
    let gens: Vec<(u8, u8)> = (1..=eng.n as u8)
        .flat_map(|i| (1..=eng.n as u8).map(move |j| (i, j)))
        .collect();
    let mut reps: Vec<Word> = vec![Word::new()];
    {
        let e = eng.embed(&Word::new());
        let mut form = OneForm::zero();
        form.add_h(&eng.sphere, &e); // reuse the H slot as a plain coordinate bag
        ech.insert(vz.vectorize(f, &form));
    }
    let mut frontier: Vec<Word> = vec![Word::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let mut w2 = w.clone();
                w2.push(*g);
                let e = eng.embed(&w2);
                let mut form = OneForm::zero();
                form.add_h(&eng.sphere, &e);
                if ech.insert(vz.vectorize(f, &form)).is_some() {
                    reps.push(w2.clone());
                    next.push(w2);
                }
            }
        }
        frontier = next;
    }
    reps
}

/// The submodule W of left multiples of the constraint relation (plus H when
/// H = 0 is imposed), as an echelon over vectorized forms with H expanded.
/// Column ids come from a caller-owned [`Vectorizer`], shared with whatever
/// residuals are reduced against the span.
pub struct RelationSpan<F: Field> {
    ech: Echelon<F>,
}

impl<F: Field> RelationSpan<F> {
    pub fn empty(eng: &Engine<F>) -> Self {
        RelationSpan { ech: Echelon::new(eng.field.clone()) }
    }

    pub fn build(
        eng: &Engine<F>,
        rel: &RelationData<F::E>,
        pad_degree: u32,
        vz: &Vectorizer,
    ) -> Self {
        let f = &eng.field;
        let mut ech: Echelon<F> = Echelon::new(f.clone());
        let reps = spanning_words(eng, pad_degree);
        let h_form = {
            let mut form = OneForm::zero();
            let one = eng.embed(&Word::new());
            form.add_h(&eng.sphere, &one);
            form.expand_h(&eng.sphere, &eng.conv)
        };
        for m in &reps {
            let me = eng.embed(m);
            for i in 1..=eng.n as u8 {
                for j in 1..=eng.n as u8 {
                    // m . (dx_ij - rhs)
                    let mut rho = OneForm::bare_dx(&eng.sphere, (i, j));
                    rho.add_scaled(&eng.sphere, &rel.rhs(eng, i, j), &f.neg(&f.one()));
                    let rho = rho.expand_h(&eng.sphere, &eng.conv);
                    ech.insert(vz.vectorize(f, &rho.left_mul(&eng.sphere, &me)));
                }
            }
            if rel.h_zero {
                ech.insert(vz.vectorize(f, &h_form.left_mul(&eng.sphere, &me)));
            }
        }
        RelationSpan { ech }
    }

    pub fn reduces_to_zero(&self, eng: &Engine<F>, vz: &Vectorizer, form: &OneForm<F::E>) -> bool {
        let expanded = form.expand_h(&eng.sphere, &eng.conv);
        self.ech.contains(&vz.vectorize(&eng.field, &expanded))
    }

    /// Reduce a base-field vector against the span.
    pub fn reduce_const<F2>(&self, _f: &F2, row: SparseRow<F::E>) -> SparseRow<F::E> {
        self.ech.reduce(&row)
    }

    /// Reduce a parameter-valued vector against the constant span.
    pub fn reduce_param(
        &self,
        pf: &crate::coeff::ParamField<F>,
        row: SparseRow<crate::coeff::ParamPoly<F::E>>,
    ) -> SparseRow<crate::coeff::ParamPoly<F::E>> {
        let mut cur = row;
        loop {
            let hit = cur
                .cols
                .iter()
                .find(|(c, _)| self.ech.row_for_pivot(*c).is_some())
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = hit else { return cur };
            let pivot = self.ech.row_for_pivot(c).unwrap();
            let lifted = SparseRow {
                cols: pivot
                    .cols
                    .iter()
                    .map(|(col, val)| (*col, pf.constant(val.clone())))
                    .collect(),
            };
            cur = cur.sub_scaled(pf, &v, &lifted);
        }
    }
}

/// Conditions applicable to a calculus.
pub fn applicable_conditions(id: CalculusId) -> Vec<Condition> {
    let mut base = vec![
        Condition::Kl1,
        Condition::Kl2,
        Condition::Kl3,
        Condition::Kl4,
        Condition::Kl5,
        Condition::Kl6,
        Condition::Kl7,
    ];
    if !matches!(id, CalculusId::Gamma) {
        base.push(Condition::Kl8);
    }
    base
}

/// Verify one calculus; optionally corrupt one named coefficient first
/// (negative control). `kl6_cap` bounds the number of kl6 instances checked
/// (its index family is six-dimensional).
pub fn verify_calculus<F: Field>(
    eng: &Engine<F>,
    id: CalculusId,
    mode: &str,
    corrupt: Option<(&str, F::E)>,
    kl6_cap: Option<usize>,
) -> Result<VerifyReport, AlgebraError> {
    let mut coeffs = published_coefficients(eng, id);
    if let Some((name, val)) = corrupt {
        let t = super::engine::term_index(name)
            .ok_or_else(|| AlgebraError::ConventionUnresolved(format!("unknown coefficient {name}")))?;
        coeffs[t] = val;
    }
    let ex = AnsatzExpander::new(coeffs);
    let rel = published_relation(eng, id);

    // Residual coefficient degrees reach deg(m) + 2 for W generators; the
    // cubic conditions produce degree-6 words, so pad W to degree 4.
    let vz = Vectorizer::new();
    let span = rel.as_ref().map(|r| RelationSpan::build(eng, r, 4, &vz));

    let mut results = Vec::new();
    for cond in applicable_conditions(id) {
        let mut instances = cond.instances(eng.n);
        if cond == Condition::Kl6 {
            if let Some(cap) = kl6_cap {
                if instances.len() > cap {
                    let step = instances.len() / cap;
                    instances = instances.into_iter().step_by(step.max(1)).collect();
                }
            }
        }
        let mut failures = 0usize;
        let mut first_failure = None;
        for idx in &instances {
            let r = cond.residual(eng, &ex, rel.as_ref(), idx);
            let ok = match &span {
                Some(w) => w.reduces_to_zero(eng, &vz, &r),
                None => r.expand_h(&eng.sphere, &eng.conv).is_zero(),
            };
            if !ok {
                failures += 1;
                if first_failure.is_none() {
                    first_failure = Some(idx.iter().map(|&b| b as u32).collect());
                }
            }
        }
        results.push(ConditionResult {
            condition: cond.name().into(),
            instances: instances.len(),
            failures,
            first_failure,
        });
    }
    Ok(VerifyReport {
        calculus: id.name().into(),
        n: eng.n,
        mode: mode.into(),
        convention: eng.conv.fingerprint(),
        conditions: results,
    })
}

/// The factorisation checks between the three calculi.
pub fn factorization_check<F: Field>(
    eng: &Engine<F>,
    mode: &str,
) -> Result<FactorizationReport, AlgebraError> {
    let f = &eng.field;
    let gt = AnsatzExpander::new(published_coefficients(eng, CalculusId::GammaTilde));
    let gtt = AnsatzExpander::new(published_coefficients(eng, CalculusId::GammaTildeTilde));
    let g = AnsatzExpander::new(published_coefficients(eng, CalculusId::Gamma));

    // (a) dropping the H components of the first restricted calculus yields
    // the second, index tuple by index tuple.
    let mut h_zero_ok = true;
    for i in 1..=eng.n as u8 {
        for j in 1..=eng.n as u8 {
            for k in 1..=eng.n as u8 {
                for l in 1..=eng.n as u8 {
                    let mut a = DxExpander::<F>::expand(&gt, eng, i, j, k, l);
                    a.h = Default::default();
                    let b = DxExpander::<F>::expand(&gtt, eng, i, j, k, l);
                    if a != b {
                        h_zero_ok = false;
                    }
                }
            }
        }
    }
    // and the constraint relations agree after substituting H = 0
    let rel_t = published_relation(eng, CalculusId::GammaTilde).unwrap();
    let rel_tt = published_relation(eng, CalculusId::GammaTildeTilde).unwrap();
    if !(rel_t.a == rel_tt.a && rel_t.b == rel_tt.b) {
        h_zero_ok = false;
    }

    // (b) imposing the first restricted calculus' relations on the free
    // calculus' bimodule formula yields the first restricted calculus.
    let vz = Vectorizer::new();
    let span = RelationSpan::build(eng, &rel_t, 3, &vz);
    let mut relation_ok = true;
    for i in 1..=eng.n as u8 {
        for j in 1..=eng.n as u8 {
            for k in 1..=eng.n as u8 {
                for l in 1..=eng.n as u8 {
                    let mut diff = DxExpander::<F>::expand(&g, eng, i, j, k, l);
                    diff.add_scaled(
                        &eng.sphere,
                        &DxExpander::<F>::expand(&gt, eng, i, j, k, l),
                        &f.neg(&f.one()),
                    );
                    if !span.reduces_to_zero(eng, &vz, &diff) {
                        relation_ok = false;
                    }
                }
            }
        }
    }

    // control: factorising by the empty relation set changes nothing.
    let empty = RelationSpan::empty(eng);
    let probe = DxExpander::<F>::expand(&g, eng, 1, 1, 1, 1)
        .expand_h(&eng.sphere, &eng.conv);
    let identity_ok = !empty.reduces_to_zero(eng, &vz, &probe) || probe.is_zero();

    Ok(FactorizationReport {
        n: eng.n,
        mode: mode.into(),
        h_zero_factorisation: h_zero_ok,
        relation_factorisation: relation_ok,
        identity_control: identity_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField};

    #[test]
    fn gamma_verifies_n2_sampled() {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let eng = Engine::new(f, 2).unwrap();
        let rep = verify_calculus(&eng, CalculusId::Gamma, "sampled", None, None).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }
}
