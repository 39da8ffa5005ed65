//! Resolution of the abbreviated-sum weight conventions.
//!
//! The source writes the weighted sums and delta-term weights as macros whose
//! q-power laws are not recoverable verbatim. This resolver searches the
//! declared candidate set (exponent slopes in {-2, 0, +2}) and keeps the
//! unique assignment under which
//!
//! (a) the derived relation sum_L_j x_ij x_jk = lambda x_ik lies in the
//!     ideal of the displayed relations (lambda solved, a q-power);
//! (b) the differential of the trace relation is the plain condition
//!     sum_i dx_ii = 0 scaled by the trace weights (built into (c));
//! (c) substituting the constraint relation
//!     dx_ij = A sum_L x_is dx_sj + B omega_ij + C x_ij H + D d_ij q^{w j} H
//!     into itself reproduces the three displayed coefficient patterns,
//!     with A, B, C, D carried as formal unknowns:
//!       sum_L substitution -> q^-2 A and (q^-1 B + q^-2 C + D),
//!       omega substitution -> q B and (q^-1 A - (q^2-1) B + q^-1 C + q D),
//!       trace substitution -> (A + q B + C + q^2 s+ D).

use crate::algebra::{build_quotient, cp_relations, word, AlgElem, AlgebraError, Convention};
use crate::coeff::{Field, ParamField, ParamPoly};
use crate::rmatrix::{build_family, RFamily};
use crate::tensor::Tensor;
use std::collections::BTreeMap;

/// One-form elements for the resolver: coefficients per dx generator pair,
/// with words reduced to quotient coordinates lazily by the caller.
type MiniForm<E> = BTreeMap<(u8, u8), AlgElem<E>>;

fn mini_add<F: Field>(f: &F, a: &mut MiniForm<F::E>, uv: (u8, u8), e: AlgElem<F::E>) {
    let slot = a.entry(uv).or_insert_with(AlgElem::zero);
    *slot = slot.add(f, &e);
}

/// omega_ij = sum_a Rlm^{tu}_{bc} Rm^{sb}_{ia} Rc^{cv}_{aj} x_st dx_uv with
/// the right-sum weight law applied to the summed index a.
fn omega_shape<F: Field>(
    f: &F,
    fam: &RFamily<F::E>,
    sum_r_slope: i64,
    i: u8,
    j: u8,
) -> MiniForm<F::E> {
    let mut out = MiniForm::new();
    // contract: for entries Rlm[t,u,b,c], Rm[s,b2,i2,a], Rc[c2,v,a2,j2]
    for (rlm_idx, rlm_v) in fam.rlm.entries() {
        let (t, u, b, c) = (rlm_idx[0], rlm_idx[1], rlm_idx[2], rlm_idx[3]);
        for (rm_idx, rm_v) in fam.rm.entries() {
            if rm_idx[1] != b || rm_idx[2] != i as u32 {
                continue;
            }
            let (s, a) = (rm_idx[0], rm_idx[3]);
            for (rc_idx, rc_v) in fam.rc.entries() {
                if rc_idx[0] != c || rc_idx[2] != a || rc_idx[3] != j as u32 {
                    continue;
                }
                let v = rc_idx[1];
                let coeff = f.mul(
                    &f.mul(rlm_v, rm_v),
                    &f.mul(rc_v, &f.q_pow(sum_r_slope * a as i64)),
                );
                let e = AlgElem::monomial(word(&[(s as u8, t as u8)]), coeff);
                mini_add(f, &mut out, (u as u8, v as u8), e);
            }
        }
    }
    out
}

/// H = sum_{i,j} q^{h_slope * j} x_ij dx_ji.
fn h_shape<F: Field>(f: &F, n: u32, h_slope: i64) -> MiniForm<F::E> {
    let mut out = MiniForm::new();
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            let e = AlgElem::monomial(word(&[(i, j)]), f.q_pow(h_slope * j as i64));
            mini_add(f, &mut out, (j, i), e);
        }
    }
    out
}

/// Left-multiply a one-form by an algebra element.
fn mini_left_mul<F: Field>(f: &F, a: &AlgElem<F::E>, form: &MiniForm<F::E>) -> MiniForm<F::E> {
    form.iter().map(|(uv, e)| (*uv, a.mul(f, e))).collect()
}

fn mini_scale<F: Field>(f: &F, form: &MiniForm<F::E>, c: &F::E) -> MiniForm<F::E> {
    form.iter().map(|(uv, e)| (*uv, e.scale(f, c))).collect()
}

fn mini_add_forms<F: Field>(f: &F, a: &MiniForm<F::E>, b: &MiniForm<F::E>) -> MiniForm<F::E> {
    let mut out = a.clone();
    for (uv, e) in b {
        mini_add(f, &mut out, *uv, e.clone());
    }
    out
}

/// The constraint-relation right-hand side for dx_ij with formal A, B, C, D.
fn relation_rhs<PF: Field>(
    pf: &PF,
    fam: &RFamily<PF::E>,
    conv_candidate: (i64, i64, i64, i64),
    a_var: &PF::E,
    b_var: &PF::E,
    c_var: &PF::E,
    d_var: &PF::E,
    i: u8,
    j: u8,
) -> MiniForm<PF::E> {
    let (sum_l, sum_r, delta, h_sl) = conv_candidate;
    let n = fam.n;
    let mut rhs = MiniForm::new();
    // A sum_L_s x_is dx_sj
    for s in 1..=n as u8 {
        let coeff = pf.mul(a_var, &pf.q_pow(sum_l * s as i64));
        mini_add(pf, &mut rhs, (s, j), AlgElem::monomial(word(&[(i, s)]), coeff));
    }
    // B omega_ij
    let om = omega_shape(pf, fam, sum_r, i, j);
    let om = mini_scale(pf, &om, b_var);
    rhs = mini_add_forms(pf, &rhs, &om);
    // C x_ij H + D delta_ij q^{delta * j} H
    let h = h_shape(pf, n, h_sl);
    let ch = mini_left_mul(pf, &AlgElem::monomial(word(&[(i, j)]), c_var.clone()), &h);
    rhs = mini_add_forms(pf, &rhs, &ch);
    if i == j {
        let dh = mini_scale(pf, &h, &pf.mul(d_var, &pf.q_pow(delta * j as i64)));
        rhs = mini_add_forms(pf, &rhs, &dh);
    }
    rhs
}

/// Check matrix entry for one candidate.
#[derive(Clone, Debug)]
pub struct CandidateCheck {
    pub sum_l_slope: i64,
    pub sum_r_slope: i64,
    pub delta_slope: i64,
    pub implied_ok: bool,
    pub pattern_ok: bool,
    pub pattern_note: Option<String>,
    pub implied_qexp: Option<i64>,
}

/// Resolve the convention by consistency at small N (symbolic by default at
/// N = 2, confirmed at N = 3 for the implied relation).
pub fn resolve_convention<F: Field>(f: &F) -> Result<Convention, AlgebraError> {
    let (conv, _) = resolve_convention_with_checks(f)?;
    Ok(conv)
}

pub fn resolve_convention_with_checks<F: Field>(
    f: &F,
) -> Result<(Convention, Vec<CandidateCheck>), AlgebraError> {
    let h_slope = -2; // displayed explicitly in the invariant one-form
    let mut checks = Vec::new();
    let mut winners = Vec::new();
    for sum_l in [-2i64, 0, 2] {
        for sum_r in [-2i64, 0, 2] {
            for delta in [-2i64, 0, 2] {
                let (implied_ok, implied_qexp) = implied_relation_check(f, sum_l, sum_r)
                    .unwrap_or((false, None));
                let pattern = match implied_qexp {
                    Some(lam) => pattern_check(f, (sum_l, sum_r, delta, h_slope), lam)
                        .unwrap_or_else(|e| Err(e.to_string())),
                    None => Err("implied relation failed".into()),
                };
                let pattern_ok = pattern.is_ok();
                checks.push(CandidateCheck {
                    sum_l_slope: sum_l,
                    sum_r_slope: sum_r,
                    delta_slope: delta,
                    implied_ok,
                    pattern_ok,
                    pattern_note: pattern.err(),
                    implied_qexp,
                });
                if implied_ok && pattern_ok {
                    winners.push(Convention {
                        sum_l_slope: sum_l,
                        sum_r_slope: sum_r,
                        delta_slope: delta,
                        h_slope,
                        implied_qexp: implied_qexp.unwrap(),
                    });
                }
            }
        }
    }
    match winners.len() {
        1 => Ok((winners.pop().unwrap(), checks)),
        0 => Err(AlgebraError::ConventionUnresolved(format!(
            "no candidate passes; check matrix: {checks:?}"
        ))),
        k => Err(AlgebraError::ConventionUnresolved(format!(
            "{k} candidates pass; check matrix: {checks:?}"
        ))),
    }
}

/// (a): sum_L_j x_ij x_jk - lambda x_ik reduces to zero for a q-power lambda,
/// for all (i,k), checked at N = 2 and N = 3.
fn implied_relation_check<F: Field>(
    f: &F,
    sum_l: i64,
    sum_r: i64,
) -> Result<(bool, Option<i64>), AlgebraError> {
    let mut lambda_exp: Option<i64> = None;
    for n in [2u32, 3] {
        let fam = build_family(f, n).map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
        let conv = Convention {
            sum_l_slope: sum_l,
            sum_r_slope: sum_r,
            delta_slope: 2,
            h_slope: -2,
            implied_qexp: 0,
        };
        let rels = cp_relations(f, &fam, &conv);
        let qb = build_quotient(f, n, 2, &rels, 100_000)?;
        for i in 1..=n as u8 {
            for k in 1..=n as u8 {
                let mut e = AlgElem::zero();
                for j in 1..=n as u8 {
                    e.add_term(f, word(&[(i, j), (j, k)]), f.q_pow(sum_l * j as i64));
                }
                let lhs = qb.reduce(&e)?;
                let rhs = qb.reduce(&AlgElem::monomial(word(&[(i, k)]), f.one()))?;
                // must be exactly lambda * x_ik in the quotient, with lambda
                // one fixed q-power across all (i, k)
                if lhs.len() != rhs.len() || rhs.is_empty() {
                    return Ok((false, None));
                }
                let mut lam: Option<F::E> = None;
                for ((id1, c1), (id2, c2)) in lhs.iter().zip(rhs.iter()) {
                    if id1 != id2 {
                        return Ok((false, None));
                    }
                    let ratio = match f.div(c1, c2) {
                        Ok(r) => r,
                        Err(_) => return Ok((false, None)),
                    };
                    match &lam {
                        None => lam = Some(ratio),
                        Some(prev) if *prev == ratio => {}
                        Some(_) => return Ok((false, None)),
                    }
                }
                let exp = match lam.as_ref().and_then(|l| q_power_exponent(f, l)) {
                    Some(e) => e,
                    None => return Ok((false, None)),
                };
                match lambda_exp {
                    None => lambda_exp = Some(exp),
                    Some(prev) if prev == exp => {}
                    Some(_) => return Ok((false, None)),
                }
            }
        }
    }
    Ok((true, lambda_exp))
}

/// Recognise a scalar as q^e by probing candidate exponents.
fn q_power_exponent<F: Field>(f: &F, v: &F::E) -> Option<i64> {
    (-16..=16).find(|&e| *v == f.q_pow(e))
}

/// (c): the three substitution computations with formal A, B, C, D.
fn pattern_check<F: Field>(
    f: &F,
    cand: (i64, i64, i64, i64),
    lambda_exp: i64,
) -> Result<Result<(), String>, AlgebraError> {
    let n = 2u32;
    let (sum_l, sum_r, _delta, h_sl) = cand;
    let pf = ParamField::new(
        f.clone(),
        vec!["A".into(), "B".into(), "C".into(), "D".into()],
    );
    let fam_b = build_family(f, n).map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
    let fam = lift_family(&pf, &fam_b);
    let conv = Convention {
        sum_l_slope: sum_l,
        sum_r_slope: sum_r,
        delta_slope: cand.2,
        h_slope: h_sl,
        implied_qexp: lambda_exp,
    };
    let rels_b = cp_relations(f, &fam_b, &conv);
    // the C x H terms of the substituted relation produce degree-3 words
    let qb = build_quotient(f, n, 3, &rels_b, 100_000)?;

    let (av, bv, cv, dv) = (pf.var(0), pf.var(1), pf.var(2), pf.var(3));

    // Reduce a MiniForm over the param field to quotient coordinates
    // componentwise: (dx pair, basis id) -> ParamPoly.
    let reduce_form = |form: &MiniForm<ParamPoly<F::E>>| -> Result<
        BTreeMap<((u8, u8), usize), ParamPoly<F::E>>,
        AlgebraError,
    > {
        let mut out: BTreeMap<((u8, u8), usize), ParamPoly<F::E>> = BTreeMap::new();
        for (uv, e) in form {
            // split the param element into per-monomial base elements
            for (w, poly) in &e.terms {
                let base_elem = AlgElem::monomial(w.clone(), f.one());
                for (id, base_c) in qb.reduce(&base_elem)? {
                    let scaled = pf.mul(poly, &pf.constant(base_c));
                    let slot = out.entry((*uv, id)).or_insert_with(|| pf.zero());
                    *slot = pf.add(slot, &scaled);
                }
            }
        }
        out.retain(|_, v| !pf.is_zero(v));
        Ok(out)
    };

    // Shapes used for the coefficient comparison.
    let suml_shape = |i: u8, k: u8| -> MiniForm<ParamPoly<F::E>> {
        let mut out = MiniForm::new();
        for s in 1..=n as u8 {
            mini_add(
                &pf,
                &mut out,
                (s, k),
                AlgElem::monomial(word(&[(i, s)]), pf.q_pow(sum_l * s as i64)),
            );
        }
        out
    };
    let h = h_shape(&pf, n, h_sl);

    // Express `target` as alpha * shape1 + beta * shape2. The shape
    // coordinates are parameter-free, so the coefficients come from a small
    // constant linear system; the decomposition is then verified in full.
    let decompose = |target: &MiniForm<ParamPoly<F::E>>,
                     shape1: &MiniForm<ParamPoly<F::E>>,
                     shape2: &MiniForm<ParamPoly<F::E>>|
     -> Result<Option<(ParamPoly<F::E>, ParamPoly<F::E>)>, AlgebraError> {
        let t = reduce_form(target)?;
        let s1 = reduce_form(shape1)?;
        let s2 = reduce_form(shape2)?;
        let constant_of = |p: &ParamPoly<F::E>| -> F::E {
            p.constant_term(4).cloned().unwrap_or_else(|| f.zero())
        };
        let tv = |key: &((u8, u8), usize)| t.get(key).cloned().unwrap_or_else(|| pf.zero());
        // Pick coordinate keys giving an invertible constant system.
        let keys: Vec<((u8, u8), usize)> = s1
            .keys()
            .chain(s2.keys())
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut solution: Option<(ParamPoly<F::E>, ParamPoly<F::E>)> = None;
        if s1.is_empty() && s2.is_empty() {
            solution = Some((pf.zero(), pf.zero()));
        } else if s2.is_empty() {
            // alpha = t[key]/s1[key] at any key with s1 nonzero
            let key = keys.iter().find(|k| s1.contains_key(*k)).unwrap().clone();
            let c = constant_of(&s1[&key]);
            let ci = match f.inv(&c) {
                Some(ci) => ci,
                None => return Ok(None),
            };
            solution = Some((pf.mul(&tv(&key), &pf.constant(ci)), pf.zero()));
        } else if s1.is_empty() {
            let key = keys.iter().find(|k| s2.contains_key(*k)).unwrap().clone();
            let c = constant_of(&s2[&key]);
            let ci = match f.inv(&c) {
                Some(ci) => ci,
                None => return Ok(None),
            };
            solution = Some((pf.zero(), pf.mul(&tv(&key), &pf.constant(ci))));
        } else {
            'outer: for k1 in &keys {
                for k2 in &keys {
                    if k1 == k2 {
                        continue;
                    }
                    let a11 = s1.get(k1).map(&constant_of).unwrap_or_else(|| f.zero());
                    let a12 = s2.get(k1).map(&constant_of).unwrap_or_else(|| f.zero());
                    let a21 = s1.get(k2).map(&constant_of).unwrap_or_else(|| f.zero());
                    let a22 = s2.get(k2).map(&constant_of).unwrap_or_else(|| f.zero());
                    let det = f.sub(&f.mul(&a11, &a22), &f.mul(&a12, &a21));
                    let Some(det_inv) = f.inv(&det) else { continue };
                    // [alpha; beta] = inv([[a11,a12],[a21,a22]]) [t1; t2]
                    let (t1, t2) = (tv(k1), tv(k2));
                    let alpha = pf.mul(
                        &pf.sub(
                            &pf.mul(&t1, &pf.constant(a22.clone())),
                            &pf.mul(&t2, &pf.constant(a12.clone())),
                        ),
                        &pf.constant(det_inv.clone()),
                    );
                    let beta = pf.mul(
                        &pf.sub(
                            &pf.mul(&t2, &pf.constant(a11.clone())),
                            &pf.mul(&t1, &pf.constant(a21.clone())),
                        ),
                        &pf.constant(det_inv),
                    );
                    solution = Some((alpha, beta));
                    break 'outer;
                }
            }
        }
        let Some((alpha, beta)) = solution else {
            return Ok(None);
        };
        // verify the full decomposition
        let mut residual = t;
        for (key, v) in &s1 {
            let slot = residual.entry(key.clone()).or_insert_with(|| pf.zero());
            *slot = pf.sub(slot, &pf.mul(&alpha, v));
        }
        for (key, v) in &s2 {
            let slot = residual.entry(key.clone()).or_insert_with(|| pf.zero());
            *slot = pf.sub(slot, &pf.mul(&beta, v));
        }
        residual.retain(|_, v| !pf.is_zero(v));
        if residual.is_empty() {
            Ok(Some((alpha, beta)))
        } else {
            Ok(None)
        }
    };

    // --- substitution 1: sum_L_j x_ij (relation for dx_jk) ---
    // expected: q^-2 A * sum_L-shape + (q^-1 B + q^-2 C + D) * x_ik H
    let (i, k) = (1u8, 2u8);
    let mut target = MiniForm::new();
    for j in 1..=n as u8 {
        let rhs = relation_rhs(&pf, &fam, cand, &av, &bv, &cv, &dv, j, k);
        let left = AlgElem::monomial(word(&[(i, j)]), pf.q_pow(sum_l * j as i64));
        target = mini_add_forms(&pf, &target, &mini_left_mul(&pf, &left, &rhs));
    }
    let xik_h = mini_left_mul(&pf, &AlgElem::monomial(word(&[(i, k)]), pf.one()), &h);
    let suml = suml_shape(i, k);
    let Some((alpha, beta)) = decompose(&target, &suml, &xik_h)? else {
        return Ok(Err("substitution 1: no decomposition".into()));
    };
    let expect_alpha = pf.mul(&pf.q_pow(-2), &av);
    let expect_beta = pf.add(
        &pf.add(&pf.mul(&pf.q_pow(-1), &bv), &pf.mul(&pf.q_pow(-2), &cv)),
        &dv,
    );
    if alpha != expect_alpha || beta != expect_beta {
        return Ok(Err(format!(
            "substitution 1: alpha={} beta={} expected alpha={} beta={}",
            pf.render(&alpha), pf.render(&beta), pf.render(&expect_alpha), pf.render(&expect_beta)
        )));
    }

    // --- substitution 2: omega_ij with dx_uv replaced by the relation ---
    // expected: q B * omega-shape + (q^-1 A - (q^2-1) B + q^-1 C + q D) x_ij H
    let (i, j) = (1u8, 2u8);
    let mut target = MiniForm::new();
    for (rlm_idx, rlm_v) in fam.rlm.entries() {
        let (t_, u, b, c) = (rlm_idx[0], rlm_idx[1], rlm_idx[2], rlm_idx[3]);
        for (rm_idx, rm_v) in fam.rm.entries() {
            if rm_idx[1] != b || rm_idx[2] != i as u32 {
                continue;
            }
            let (s, a) = (rm_idx[0], rm_idx[3]);
            for (rc_idx, rc_v) in fam.rc.entries() {
                if rc_idx[0] != c || rc_idx[2] != a || rc_idx[3] != j as u32 {
                    continue;
                }
                let v = rc_idx[1];
                let coeff = pf.mul(
                    &pf.mul(rlm_v, rm_v),
                    &pf.mul(rc_v, &pf.q_pow(sum_r * a as i64)),
                );
                let rhs = relation_rhs(&pf, &fam, cand, &av, &bv, &cv, &dv, u as u8, v as u8);
                let left = AlgElem::monomial(word(&[(s as u8, t_ as u8)]), coeff);
                target = mini_add_forms(&pf, &target, &mini_left_mul(&pf, &left, &rhs));
            }
        }
    }
    let om_shape: MiniForm<ParamPoly<F::E>> = omega_shape(&pf, &fam, sum_r, i, j);
    let xij_h = mini_left_mul(&pf, &AlgElem::monomial(word(&[(i, j)]), pf.one()), &h);
    let Some((alpha, beta)) = decompose(&target, &om_shape, &xij_h)? else {
        return Ok(Err("substitution 2: no decomposition".into()));
    };
    let expect_alpha = pf.mul(&pf.q_pow(1), &bv);
    let expect_beta = {
        let t1 = pf.mul(&pf.q_pow(-1), &av);
        let t2 = pf.mul(&pf.sub(&pf.q_pow(2), &pf.one()), &bv);
        let t3 = pf.mul(&pf.q_pow(-1), &cv);
        let t4 = pf.mul(&pf.q_pow(1), &dv);
        pf.add(&pf.add(&pf.sub(&t1, &t2), &t3), &t4)
    };
    if alpha != expect_alpha || beta != expect_beta {
        return Ok(Err(format!(
            "substitution 2: alpha={} beta={} expected alpha={} beta={}",
            pf.render(&alpha), pf.render(&beta), pf.render(&expect_alpha), pf.render(&expect_beta)
        )));
    }

    // --- substitution 3: sum_R_i (relation for dx_ii) ---
    // expected: (A + q B + C + q^2 s+ D) * H
    let mut target = MiniForm::new();
    for i in 1..=n as u8 {
        let rhs = relation_rhs(&pf, &fam, cand, &av, &bv, &cv, &dv, i, i);
        let scaled = mini_scale(&pf, &rhs, &pf.q_pow(sum_r * i as i64));
        target = mini_add_forms(&pf, &target, &scaled);
    }
    let zero_form = MiniForm::new();
    let Some((alpha, _)) = decompose(&target, &h, &zero_form)? else {
        return Ok(Err("substitution 3: no decomposition".into()));
    };
    let splus = QConstantsSplus::splus(&pf, n);
    let expect = {
        let t1 = av.clone();
        let t2 = pf.mul(&pf.q_pow(1), &bv);
        let t4 = pf.mul(&pf.mul(&pf.q_pow(2), &splus), &dv);
        pf.add(&pf.add(&pf.add(&t1, &t2), &cv), &t4)
    };
    if alpha != expect {
        return Ok(Err(format!(
            "substitution 3: alpha={} expected {}",
            pf.render(&alpha),
            pf.render(&expect)
        )));
    }
    Ok(Ok(()))
}

struct QConstantsSplus;
impl QConstantsSplus {
    fn splus<PF: Field>(pf: &PF, n: u32) -> PF::E {
        let mut s = pf.zero();
        for i in 0..n {
            s = pf.add(&s, &pf.q_pow(2 * i as i64));
        }
        s
    }
}

fn lift_family<F: Field>(
    pf: &ParamField<F>,
    fam: &RFamily<F::E>,
) -> RFamily<ParamPoly<F::E>> {
    let lift = |t: &Tensor<F::E>| t.map_entries(|v| pf.constant(v.clone()));
    RFamily {
        n: fam.n,
        r: lift(&fam.r),
        rm: lift(&fam.rm),
        rc: lift(&fam.rc),
        rl: lift(&fam.rl),
        rr: lift(&fam.rr),
        rcm: lift(&fam.rcm),
        rlm: lift(&fam.rlm),
        rrm: lift(&fam.rrm),
        rcp: lift(&fam.rcp),
        rcpm: lift(&fam.rcpm),
        rcpc: lift(&fam.rcpc),
        rcpcm: lift(&fam.rcpcm),
        consts: crate::rmatrix::QConstants {
            splus: pf.constant(fam.consts.splus.clone()),
            siplus: pf.constant(fam.consts.siplus.clone()),
            siiplus: pf.constant(fam.consts.siiplus.clone()),
            siiiplus: pf.constant(fam.consts.siiiplus.clone()),
            sivplus: pf.constant(fam.consts.sivplus.clone()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField, SymbolicField};

    #[test]
    fn resolver_unique_sampled() {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let (conv, _checks) = resolve_convention_with_checks(&f).unwrap();
        assert_eq!(conv, Convention::resolved());
    }

    #[test]
    fn resolver_unique_symbolic() {
        let f = SymbolicField;
        let conv = resolve_convention(&f).unwrap();
        assert_eq!(conv, Convention::resolved());
        assert_eq!(conv.implied_qexp, -2);
    }

    #[test]
    fn wrong_weight_law_rejected() {
        // the (0, 0) left/right slopes fail the implied-relation membership
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let (ok, _) = implied_relation_check(&f, 0, 0).unwrap();
        assert!(!ok);
    }
}
