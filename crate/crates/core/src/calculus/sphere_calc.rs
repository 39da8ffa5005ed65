//! Covariant first-order calculi on the sphere and their restriction to
//! CP_q^{N-1}.
//!
//! The seven published families of sphere calculi have explicit bimodule
//! structures: each of dz_k z_l, dz*_k z*_l, dz_k z*_l, dz*_k z_l is an
//! R-matrix term plus scalar multiples of z z-type words times the basic
//! invariant one-forms H+ = sum_i z_i dz*_i and H- = sum_i q^{-2i} z*_i dz_i
//! (weights per the resolved convention). One-forms on the sphere are kept
//! in left normal form, coefficients in sphere coordinates per dz/dz* atom.
//!
//! Restriction: dx_ij = d(z_i z*_j) = dz_i . z*_j + z_i dz*_j, and
//! dx_ij . x_kl is computed by right-multiplying with the letters z_k, z*_l.
//! The result is the ground-truth bimodule map of the restricted calculus,
//! compared against CP-side candidates through the same normal form.

use super::engine::Engine;
use super::oneform::OneForm;
use crate::algebra::sphere::{elem_add, elem_scale, Letter, SphereElem, SphereMonomial};
use crate::algebra::AlgebraError;
use crate::coeff::Field;
use crate::tensor::Tensor;
use std::collections::BTreeMap;

/// A one-form over the sphere algebra in left normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereForm<E> {
    pub dz: BTreeMap<u8, SphereElem<E>>,
    pub dzs: BTreeMap<u8, SphereElem<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> SphereForm<E> {
    pub fn zero() -> Self {
        SphereForm { dz: BTreeMap::new(), dzs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.dz.values().all(|e| e.is_empty()) && self.dzs.values().all(|e| e.is_empty())
    }

    pub fn add_dz<F: Field<E = E>>(&mut self, f: &F, t: u8, e: &SphereElem<E>) {
        let slot = self.dz.entry(t).or_default();
        *slot = elem_add(f, slot, e);
        if slot.is_empty() {
            self.dz.remove(&t);
        }
    }

    pub fn add_dzs<F: Field<E = E>>(&mut self, f: &F, t: u8, e: &SphereElem<E>) {
        let slot = self.dzs.entry(t).or_default();
        *slot = elem_add(f, slot, e);
        if slot.is_empty() {
            self.dzs.remove(&t);
        }
    }

    pub fn add_form<F: Field<E = E>>(&mut self, f: &F, rhs: &Self) {
        for (t, e) in &rhs.dz {
            self.add_dz(f, *t, e);
        }
        for (t, e) in &rhs.dzs {
            self.add_dzs(f, *t, e);
        }
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> Self {
        SphereForm {
            dz: self
                .dz
                .iter()
                .map(|(t, e)| (*t, elem_scale(f, e, c)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
            dzs: self
                .dzs
                .iter()
                .map(|(t, e)| (*t, elem_scale(f, e, c)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
        }
    }
}

/// One scalar term of a sector rule: coeff * (word given by the flags) * (H+
/// or H-), with an optional delta_kl gate and q^{slope * k} weight.
#[derive(Clone, Debug)]
pub struct HTerm<E> {
    pub coeff: E,
    /// None: no algebra prefactor (pure delta term); Some(false): the plain
    /// word of the sector pair; the delta gate applies when `delta_gated`.
    pub with_pair_word: bool,
    pub delta_gated: bool,
    pub k_slope: i64,
    pub plus: bool,
}

/// The bimodule rule of one sector:
/// dA_k . B_l = coeff T^{st}_{kl} B_s dA_t + swap_diag A_k dB_l + H terms,
/// where A is the differential's kind and B the letter's kind.
#[derive(Clone, Debug)]
pub struct SectorRule<E> {
    pub tensor: Tensor<E>,
    pub coeff: E,
    pub swap_diag: Option<E>,
    pub h_terms: Vec<HTerm<E>>,
}

/// Which sphere-calculus family, with its parameter values.
#[derive(Clone, Debug, PartialEq)]
pub enum SphereFamilyId<E> {
    /// dz, dz* free left-module families
    GammaAt { alpha: E, tau: E },
    GammaAp { alpha: E, omega: E },
    GammaP { omega: E, psi: E },
    GammaPp { rho: E, tau: E },
    /// one-relation families (H+ + lambda H- = 0)
    GammaTL { lambda: E },
    GammaTP { lambda: E },
    GammaTPp { lambda: E },
}

impl<E: std::fmt::Debug> SphereFamilyId<E> {
    pub fn name(&self) -> &'static str {
        match self {
            SphereFamilyId::GammaAt { .. } => "gamma-hat-t",
            SphereFamilyId::GammaAp { .. } => "gamma-hat-prime",
            SphereFamilyId::GammaP { .. } => "gamma-prime",
            SphereFamilyId::GammaPp { .. } => "gamma-double-prime",
            SphereFamilyId::GammaTL { .. } => "gamma-tilde-lambda",
            SphereFamilyId::GammaTP { .. } => "gamma-tilde-prime",
            SphereFamilyId::GammaTPp { .. } => "gamma-tilde-double-prime",
        }
    }
}

/// The four sector rules of a sphere calculus.
pub struct SphereCalculus<E> {
    pub zz: SectorRule<E>,
    pub ss: SectorRule<E>,
    pub zs: SectorRule<E>,
    pub sz: SectorRule<E>,
    /// Left-module relation H+ + lambda H- = 0, when the family has one.
    pub relation_lambda: Option<E>,
    pub family: String,
}

/// Build the displayed bimodule structure of a family.
pub fn sphere_calculus<F: Field>(
    eng: &Engine<F>,
    id: &SphereFamilyId<F::E>,
) -> Result<SphereCalculus<F::E>, AlgebraError> {
    let f = &eng.field;
    let n = eng.n as i64;
    let inv = |e: &F::E| {
        f.inv(e).ok_or_else(|| AlgebraError::SphereUnresolved("parameter not invertible".into()))
    };
    let si_inv = inv(&eng.consts().siplus)?;
    let one = f.one();
    let m1 = f.neg(&one);
    let ht = |coeff: F::E, with_pair_word: bool, delta_gated: bool, k_slope: i64, plus: bool| HTerm {
        coeff,
        with_pair_word,
        delta_gated,
        k_slope,
        plus,
    };
    let rule = |tensor: &Tensor<F::E>, coeff: F::E, h_terms: Vec<HTerm<F::E>>| SectorRule {
        tensor: tensor.clone(),
        coeff,
        swap_diag: None,
        h_terms,
    };
    let rule_sw = |tensor: &Tensor<F::E>,
                   coeff: F::E,
                   swap: F::E,
                   h_terms: Vec<HTerm<F::E>>| SectorRule {
        tensor: tensor.clone(),
        coeff,
        swap_diag: Some(swap),
        h_terms,
    };
    let c = match id {
        SphereFamilyId::GammaTPp { lambda } => {
            // dz_k z_l = q^-1 Rm z dz
            // dz*_k z*_l = q Rc z* dz*
            // dz_k z*_l = q Rlm z* dz
            //   + q^-2 si+^-1 (q^4/lambda - 1) q^{2k} delta_kl H+
            //   - si+^-1 (q^{2N+2}/lambda - 1) z_k z*_l H+
            // dz*_k z_l = q^-1 Rr z dz*
            //   + q^{2N-2} si+^-1 (q^4/lambda - 1) delta_kl H+
            //   - si+^-1 (q^{2N+2}/lambda - 1) z*_k z_l H+
            let li = inv(lambda)?;
            let c4 = f.sub(&f.mul(&f.q_pow(4), &li), &one);
            let c2n = f.sub(&f.mul(&f.q_pow(2 * n + 2), &li), &one);
            SphereCalculus {
                zz: rule(&eng.fam.rm, f.q_pow(-1), vec![]),
                ss: rule(&eng.fam.rc, f.q_pow(1), vec![]),
                zs: rule(
                    &eng.fam.rlm,
                    f.q_pow(1),
                    vec![
                        ht(f.mul(&f.mul(&f.q_pow(-2), &si_inv), &c4), false, true, 2, true),
                        ht(f.neg(&f.mul(&si_inv, &c2n)), true, false, 0, true),
                    ],
                ),
                sz: rule(
                    &eng.fam.rr,
                    f.q_pow(-1),
                    vec![
                        ht(f.mul(&f.mul(&f.q_pow(2 * n - 2), &si_inv), &c4), false, true, 0, true),
                        ht(f.neg(&f.mul(&si_inv, &c2n)), true, false, 0, true),
                    ],
                ),
                relation_lambda: Some(lambda.clone()),
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaTP { lambda } => {
            // dz_k z_l = q^-1 Rm z dz - lambda^-1 (q^4/lambda - 1) z_k z_l H+
            // dz*_k z*_l = q Rc z* dz* - q^-2 lambda (q^4/lambda - 1) z*z* H+
            // dz_k z*_l = q Rlm z* dz + (q^2/lambda - 1) z_k z*_l H+
            // dz*_k z_l = q^-1 Rr z dz* + (q^2/lambda - 1) z*_k z_l H+
            let li = inv(lambda)?;
            let c4 = f.sub(&f.mul(&f.q_pow(4), &li), &one);
            let c2 = f.sub(&f.mul(&f.q_pow(2), &li), &one);
            SphereCalculus {
                zz: rule(
                    &eng.fam.rm,
                    f.q_pow(-1),
                    vec![ht(f.neg(&f.mul(&li, &c4)), true, false, 0, true)],
                ),
                ss: rule(
                    &eng.fam.rc,
                    f.q_pow(1),
                    vec![ht(
                        f.neg(&f.mul(&f.mul(&f.q_pow(-2), lambda), &c4)),
                        true,
                        false,
                        0,
                        true,
                    )],
                ),
                zs: rule(&eng.fam.rlm, f.q_pow(1), vec![ht(c2.clone(), true, false, 0, true)]),
                sz: rule(&eng.fam.rr, f.q_pow(-1), vec![ht(c2, true, false, 0, true)]),
                relation_lambda: Some(lambda.clone()),
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaTL { lambda } => {
            // dz_k z_l = q lambda^-1 Rm z dz + (q^2 lambda^-1 - 1) z_k dz_l
            //            + q^2 lambda^-1 (lambda^-1 - 1) z_k z_l H+
            // dz*_k z*_l = q^-1 lambda Rc z* dz* + (q^-2 lambda - 1) z*_k dz*_l
            //            - (lambda - 1) z*_k z*_l H+
            // dz_k z*_l = q^-1 lambda Rlm z* dz + (q^2 lambda^-1 - 1) z_k dz*_l
            //            - (q^2 lambda^-1 - 1) z_k z*_l H+
            // dz*_k z_l = q lambda^-1 Rr z dz* + (q^-2 lambda - 1) z*_k dz_l
            //            - (q^2 lambda^-1 - 1) z*_k z_l H+
            let li = inv(lambda)?;
            let a = f.sub(&f.mul(&f.q_pow(2), &li), &one);
            let b = f.sub(&f.mul(&f.q_pow(-2), lambda), &one);
            SphereCalculus {
                zz: rule_sw(
                    &eng.fam.rm,
                    f.mul(&f.q_pow(1), &li),
                    a.clone(),
                    vec![ht(
                        f.mul(&f.mul(&f.q_pow(2), &li), &f.sub(&li, &one)),
                        true,
                        false,
                        0,
                        true,
                    )],
                ),
                ss: rule_sw(
                    &eng.fam.rc,
                    f.mul(&f.q_pow(-1), lambda),
                    b.clone(),
                    vec![ht(f.neg(&f.sub(lambda, &one)), true, false, 0, true)],
                ),
                zs: rule_sw(
                    &eng.fam.rlm,
                    f.mul(&f.q_pow(-1), lambda),
                    a.clone(),
                    vec![ht(f.neg(&a), true, false, 0, true)],
                ),
                sz: rule_sw(
                    &eng.fam.rr,
                    f.mul(&f.q_pow(1), &li),
                    b.clone(),
                    vec![ht(f.neg(&a), true, false, 0, true)],
                ),
                relation_lambda: Some(lambda.clone()),
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaAt { alpha, tau } => {
            // two-parameter free family; both H+ and H- appear
            let ai = inv(alpha)?;
            let si = &eng.consts().siplus;
            let s_ = &eng.consts().splus;
            let sit = f.mul(si, tau);
            let st = f.mul(s_, tau);
            let q2a = f.mul(&f.q_pow(2), alpha);
            let swz = f.sub(&q2a, &one);
            let sws = f.sub(&f.mul(&f.q_pow(-2), &ai), &one);
            SphereCalculus {
                zz: rule_sw(
                    &eng.fam.rm,
                    f.mul(&f.q_pow(1), alpha),
                    swz.clone(),
                    vec![
                        ht(
                            f.mul(&f.mul(&f.q_pow(2), &f.mul(alpha, alpha)), &f.sub(&one, &sit)),
                            true,
                            false,
                            0,
                            true,
                        ),
                        ht(
                            f.mul(&f.q_pow(2), &f.sub(&one, &f.mul(alpha, &sit))),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                ss: rule_sw(
                    &eng.fam.rc,
                    f.mul(&f.q_pow(-1), &ai),
                    sws.clone(),
                    vec![
                        ht(f.sub(&one, &sit), true, false, 0, true),
                        ht(
                            f.mul(&f.mul(&ai, &ai), &f.sub(&one, &f.mul(alpha, &sit))),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                zs: rule_sw(
                    &eng.fam.rlm,
                    f.mul(&f.q_pow(-1), &ai),
                    swz.clone(),
                    vec![
                        ht(f.neg(&f.mul(&q2a, &f.sub(&one, &st))), true, false, 0, true),
                        ht(f.neg(&f.mul(alpha, tau)), false, true, 2, true),
                        ht(
                            f.neg(&f.mul(&ai, &f.sub(&one, &f.mul(&f.mul(&f.q_pow(2), alpha), &st)))),
                            true,
                            false,
                            0,
                            false,
                        ),
                        ht(f.neg(tau), false, true, 2, false),
                    ],
                ),
                sz: rule_sw(
                    &eng.fam.rr,
                    f.mul(&f.q_pow(1), alpha),
                    sws.clone(),
                    vec![
                        ht(f.neg(&f.mul(&q2a, &f.sub(&one, &st))), true, false, 0, true),
                        ht(f.neg(&f.mul(&f.q_pow(2 * n), &f.mul(alpha, tau))), false, true, 0, true),
                        ht(
                            f.neg(&f.mul(&ai, &f.sub(&one, &f.mul(&f.mul(&f.q_pow(2), alpha), &st)))),
                            true,
                            false,
                            0,
                            false,
                        ),
                        ht(f.neg(&f.mul(&f.q_pow(2 * n), tau)), false, true, 0, false),
                    ],
                ),
                relation_lambda: None,
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaAp { alpha, omega } => {
            let ai = inv(alpha)?;
            let oi = inv(omega)?;
            let q2a = f.mul(&f.q_pow(2), alpha);
            let swz = f.sub(&q2a, &one);
            let sws = f.sub(&f.mul(&f.q_pow(-2), &ai), &one);
            SphereCalculus {
                zz: rule_sw(
                    &eng.fam.rm,
                    f.mul(&f.q_pow(1), alpha),
                    swz.clone(),
                    vec![
                        ht(omega.clone(), true, false, 0, true),
                        ht(
                            f.sub(&f.mul(&ai, omega), &f.mul(&f.q_pow(2), &f.sub(alpha, &one))),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                ss: rule_sw(
                    &eng.fam.rc,
                    f.mul(&f.q_pow(-1), &ai),
                    sws.clone(),
                    vec![
                        ht(
                            f.sub(&f.mul(&f.mul(&f.q_pow(2), alpha), &oi), &f.sub(&ai, &one)),
                            true,
                            false,
                            0,
                            true,
                        ),
                        ht(f.mul(&f.q_pow(2), &oi), true, false, 0, false),
                    ],
                ),
                zs: rule_sw(
                    &eng.fam.rlm,
                    f.mul(&f.q_pow(-1), &ai),
                    swz.clone(),
                    vec![
                        ht(f.neg(&q2a), true, false, 0, true),
                        ht(f.neg(&ai), true, false, 0, false),
                    ],
                ),
                sz: rule_sw(
                    &eng.fam.rr,
                    f.mul(&f.q_pow(1), alpha),
                    sws.clone(),
                    vec![
                        ht(f.neg(&q2a), true, false, 0, true),
                        ht(f.neg(&ai), true, false, 0, false),
                    ],
                ),
                relation_lambda: None,
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaP { omega, psi } => {
            let oi = inv(omega)?;
            SphereCalculus {
                zz: rule(
                    &eng.fam.rm,
                    f.q_pow(-1),
                    vec![
                        ht(omega.clone(), true, false, 0, true),
                        ht(
                            f.sub(&f.mul(&f.mul(&f.q_pow(2), omega), psi), &one),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                ss: rule(
                    &eng.fam.rc,
                    f.q_pow(1),
                    vec![
                        ht(f.sub(psi, &f.q_pow(2)), true, false, 0, true),
                        ht(f.mul(&f.q_pow(2), &oi), true, false, 0, false),
                    ],
                ),
                zs: rule(
                    &eng.fam.rlm,
                    f.q_pow(1),
                    vec![
                        ht(m1.clone(), true, false, 0, true),
                        ht(f.neg(&f.q_pow(2)), true, false, 0, false),
                    ],
                ),
                sz: rule(
                    &eng.fam.rr,
                    f.q_pow(-1),
                    vec![
                        ht(m1.clone(), true, false, 0, true),
                        ht(f.neg(&f.q_pow(2)), true, false, 0, false),
                    ],
                ),
                relation_lambda: None,
                family: id.name().into(),
            }
        }
        SphereFamilyId::GammaPp { rho, tau } => {
            let ti = inv(tau)?;
            let ri = inv(rho)?;
            let si = &eng.consts().siplus;
            let s = &eng.consts().splus;
            let rt = f.mul(rho, &ti);
            let tr = f.mul(tau, &ri);
            SphereCalculus {
                zz: rule(
                    &eng.fam.rm,
                    f.q_pow(-1),
                    vec![
                        ht(
                            f.neg(&f.mul(
                                &f.mul(&f.q_pow(-2), &rt),
                                &f.sub(&f.mul(si, rho), &one),
                            )),
                            true,
                            false,
                            0,
                            true,
                        ),
                        ht(
                            f.neg(&f.mul(&rt, &f.sub(&f.mul(si, tau), &f.q_pow(2)))),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                ss: rule(
                    &eng.fam.rc,
                    f.q_pow(1),
                    vec![
                        ht(
                            f.neg(&f.mul(&tr, &f.sub(&f.mul(si, rho), &one))),
                            true,
                            false,
                            0,
                            true,
                        ),
                        ht(
                            f.neg(&f.mul(
                                &f.mul(&f.q_pow(2), &tr),
                                &f.sub(&f.mul(si, tau), &f.q_pow(2)),
                            )),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                zs: rule(
                    &eng.fam.rlm,
                    f.q_pow(1),
                    vec![
                        ht(f.neg(&f.mul(&f.q_pow(-2), rho)), false, true, 2, true),
                        ht(f.neg(tau), false, true, 2, false),
                        ht(f.sub(&f.mul(s, rho), &one), true, false, 0, true),
                        ht(
                            f.mul(&f.q_pow(2), &f.sub(&f.mul(s, tau), &one)),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                sz: rule(
                    &eng.fam.rr,
                    f.q_pow(-1),
                    vec![
                        ht(f.neg(&f.mul(&f.q_pow(2 * n - 2), rho)), false, true, 0, true),
                        ht(f.neg(&f.mul(&f.q_pow(2 * n), tau)), false, true, 0, false),
                        ht(f.sub(&f.mul(s, rho), &one), true, false, 0, true),
                        ht(
                            f.mul(&f.q_pow(2), &f.sub(&f.mul(s, tau), &one)),
                            true,
                            false,
                            0,
                            false,
                        ),
                    ],
                ),
                relation_lambda: None,
                family: id.name().into(),
            }
        }
    };
    Ok(c)
}

/// H+ = sum_i z_i dz*_i, H- = sum_i q^{-2i} z*_i dz_i as sphere forms.
fn basic_invariant<F: Field>(eng: &Engine<F>, plus: bool) -> SphereForm<F::E> {
    let f = &eng.field;
    let mut out = SphereForm::zero();
    for i in 1..=eng.n as u8 {
        let mut e = SphereElem::new();
        e.insert(SphereMonomial::one(eng.n), f.one());
        if plus {
            let zi = eng.sphere.mul_elem_letter(&e, Letter::Z(i));
            out.add_dzs(f, i, &zi);
        } else {
            let zsi = eng.sphere.mul_elem_letter(&e, Letter::Zs(i));
            out.add_dz(f, i, &elem_scale(f, &zsi, &f.q_pow(-2 * i as i64)));
        }
    }
    out
}

/// The engine for one family: right multiplication of sphere forms by
/// algebra letters, and the restriction map.
pub struct SphereCalcEngine<'e, F: Field> {
    pub eng: &'e Engine<F>,
    pub calc: SphereCalculus<F::E>,
    hplus: SphereForm<F::E>,
    hminus: SphereForm<F::E>,
}

impl<'e, F: Field> SphereCalcEngine<'e, F> {
    pub fn new(eng: &'e Engine<F>, id: &SphereFamilyId<F::E>) -> Result<Self, AlgebraError> {
        let calc = sphere_calculus(eng, id)?;
        Ok(SphereCalcEngine {
            eng,
            calc,
            hplus: basic_invariant(eng, true),
            hminus: basic_invariant(eng, false),
        })
    }

    fn letter_elem(&self, letter: Letter) -> SphereElem<F::E> {
        let f = &self.eng.field;
        let mut e = SphereElem::new();
        e.insert(SphereMonomial::one(self.eng.n), f.one());
        self.eng.sphere.mul_elem_letter(&e, letter)
    }

    /// d?_k . letter_l expansion per the sector rule.
    fn datom_letter(&self, datom_is_dz: bool, k: u8, letter: Letter) -> SphereForm<F::E> {
        let f = &self.eng.field;
        let (rule, out_is_dz, l) = match (datom_is_dz, letter) {
            (true, Letter::Z(l)) => (&self.calc.zz, true, l),
            (true, Letter::Zs(l)) => (&self.calc.zs, true, l),
            (false, Letter::Zs(l)) => (&self.calc.ss, false, l),
            (false, Letter::Z(l)) => (&self.calc.sz, false, l),
        };
        // main R-matrix part: coeff * T^{st}_{kl} B_s dA_t where B is the
        // letter's own kind and dA keeps the datom kind
        let mut out = SphereForm::zero();
        for (idx, v) in rule.tensor.entries() {
            if idx[2] as u8 != k || idx[3] as u8 != l {
                continue;
            }
            let (s, t) = (idx[0] as u8, idx[1] as u8);
            let scale = f.mul(&rule.coeff, v);
            let b_letter = match letter {
                Letter::Z(_) => Letter::Z(s),
                Letter::Zs(_) => Letter::Zs(s),
            };
            let be = elem_scale(f, &self.letter_elem(b_letter), &scale);
            if out_is_dz {
                out.add_dz(f, t, &be);
            } else {
                out.add_dzs(f, t, &be);
            }
        }
        // swapped-kind diagonal: swap_diag * A_k dB_l
        if let Some(c) = &rule.swap_diag {
            let a_letter = if datom_is_dz { Letter::Z(k) } else { Letter::Zs(k) };
            let ae = elem_scale(f, &self.letter_elem(a_letter), c);
            match letter {
                Letter::Z(l2) => out.add_dz(f, l2, &ae),
                Letter::Zs(l2) => out.add_dzs(f, l2, &ae),
            }
        }
        // H terms
        for h in &rule.h_terms {
            if h.delta_gated && k != l {
                continue;
            }
            let mut coeff = h.coeff.clone();
            if h.k_slope != 0 {
                coeff = f.mul(&coeff, &f.q_pow(h.k_slope * k as i64));
            }
            let hform = if h.plus { &self.hplus } else { &self.hminus };
            let mut term = hform.scale(f, &coeff);
            if h.with_pair_word {
                // word = A_k B_l for the sector pair
                let a_letter = if datom_is_dz { Letter::Z(k) } else { Letter::Zs(k) };
                let mut w = SphereElem::new();
                w.insert(SphereMonomial::one(self.eng.n), f.one());
                let w = self.eng.sphere.mul_elem_letter(&w, a_letter);
                let w = self.eng.sphere.mul_elem_letter(&w, letter);
                term = self.left_mul_form(&term, &w);
            }
            out.add_form(f, &term);
        }
        out
    }

    pub fn left_mul_form_pub(&self, form: &SphereForm<F::E>, m: &SphereElem<F::E>) -> SphereForm<F::E> {
        self.left_mul_form(form, m)
    }

    pub fn hplus_pub(&self) -> SphereForm<F::E> {
        self.hplus.clone()
    }

    pub fn hminus_pub(&self) -> SphereForm<F::E> {
        self.hminus.clone()
    }

    fn left_mul_form(&self, form: &SphereForm<F::E>, m: &SphereElem<F::E>) -> SphereForm<F::E> {
        SphereForm {
            dz: form
                .dz
                .iter()
                .map(|(t, e)| (*t, self.eng.sphere.mul_elems(m, e)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
            dzs: form
                .dzs
                .iter()
                .map(|(t, e)| (*t, self.eng.sphere.mul_elems(m, e)))
                .filter(|(_, e)| !e.is_empty())
                .collect(),
        }
    }

    /// Right-multiply a sphere form by one algebra letter.
    pub fn form_mul_letter(&self, form: &SphereForm<F::E>, letter: Letter) -> SphereForm<F::E> {
        let f = &self.eng.field;
        let mut out = SphereForm::zero();
        for (k, w) in &form.dz {
            let expanded = self.datom_letter(true, *k, letter);
            out.add_form(f, &self.left_mul_form(&expanded, w));
        }
        for (k, w) in &form.dzs {
            let expanded = self.datom_letter(false, *k, letter);
            out.add_form(f, &self.left_mul_form(&expanded, w));
        }
        out
    }

    /// dx_ij = dz_i . z*_j + z_i dz*_j.
    pub fn dx(&self, i: u8, j: u8) -> SphereForm<F::E> {
        let f = &self.eng.field;
        let mut base = SphereForm::zero();
        let one = {
            let mut e = SphereElem::new();
            e.insert(SphereMonomial::one(self.eng.n), f.one());
            e
        };
        base.add_dz(f, i, &one);
        let mut out = self.form_mul_letter(&base, Letter::Zs(j));
        let zi = self.letter_elem(Letter::Z(i));
        let mut second = SphereForm::zero();
        second.add_dzs(f, j, &zi);
        out.add_form(f, &second);
        out
    }

    /// The ground-truth restricted bimodule map dx_ij . x_kl.
    pub fn dx_times_x(&self, i: u8, j: u8, k: u8, l: u8) -> SphereForm<F::E> {
        let dx = self.dx(i, j);
        let step = self.form_mul_letter(&dx, Letter::Z(k));
        self.form_mul_letter(&step, Letter::Zs(l))
    }

    /// Transport a CP-side one-form (H expanded) into a sphere form.
    pub fn transport(&self, form: &OneForm<F::E>) -> SphereForm<F::E> {
        let f = &self.eng.field;
        let expanded = form.expand_h(&self.eng.sphere, &self.eng.conv);
        let mut out = SphereForm::zero();
        for (uv, w) in &expanded.dx {
            let dxuv = self.dx(uv.0, uv.1);
            out.add_form(f, &self.left_mul_form(&dxuv, w));
        }
        out
    }

    /// The module relation H+ + lambda H- as a sphere form, when present.
    pub fn relation_form(&self) -> Option<SphereForm<F::E>> {
        let f = &self.eng.field;
        let lambda = self.calc.relation_lambda.as_ref()?;
        let mut rel = self.hplus.clone();
        rel.add_form(f, &self.hminus.scale(f, lambda));
        Some(rel)
    }
}
