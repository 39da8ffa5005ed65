use cpq_core::algebra::linalg::Echelon;
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::algebra::word;
use cpq_core::calculus::engine::{term_index, PsiVariant};
use cpq_core::calculus::oneform::OneForm;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use cpq_core::algebra::Convention;
use std::cell::RefCell;
use std::collections::BTreeMap;

struct FormVec { ids: RefCell<BTreeMap<(u16, SphereMonomial), u64>> }
impl FormVec {
    fn new() -> Self { FormVec { ids: RefCell::new(BTreeMap::new()) } }
    fn vec(&self, f: &SampledField, form: &SphereForm<Rat>) -> cpq_core::algebra::linalg::SparseRow<Rat> {
        let mut cols = Vec::new();
        for (block, part) in [(0u16, &form.dz), (256u16, &form.dzs)] {
            for (t, e) in part {
                for (m, c) in e {
                    let key = (block + *t as u16, m.clone());
                    let mut ids = self.ids.borrow_mut();
                    let next = ids.len() as u64;
                    let id = *ids.entry(key).or_insert(next);
                    cols.push((id, c.clone()));
                }
            }
        }
        cpq_core::algebra::linalg::SparseRow::from_unsorted(f, cols)
    }
}

fn monomials(n: usize, dmax: u32) -> Vec<SphereMonomial> {
    let mut out = Vec::new();
    let mut stack = vec![(vec![0u8; 2 * n], 0usize)];
    while let Some((exps, pos)) = stack.pop() {
        if pos == 2 * n {
            let z: smallvec::SmallVec<[u8; 8]> = exps[..n].iter().copied().collect();
            let zs: smallvec::SmallVec<[u8; 8]> = exps[n..].iter().copied().collect();
            if !(z[n-1] > 0 && zs[n-1] > 0) { out.push(SphereMonomial { z, zs }); }
            continue;
        }
        let used: u32 = exps.iter().map(|&e| e as u32).sum();
        for v in 0..=(dmax - used) {
            let mut e2 = exps.clone();
            e2[pos] = v as u8;
            stack.push((e2, pos + 1));
        }
    }
    out
}

fn main() {
    let n = 2u32;
    let nn = n as i64;
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    let eng_wt = Engine::with_psi_variant(f.clone(), n, Convention::resolved(), PsiVariant::WeightedTrace).unwrap();
    let lam = f.q_pow(2 * nn + 2);
    let sc = SphereCalcEngine::new(&eng, &SphereFamilyId::GammaTPp { lambda: lam }).unwrap();
    let rel_form = sc.relation_form().unwrap();
    let fv = FormVec::new();
    let mut span: Echelon<SampledField> = Echelon::new(f.clone());
    for m in monomials(n as usize, 6) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        span.insert(fv.vec(&f, &sc.left_mul_form_pub(&rel_form, &me)));
    }
    let si_inv = eng.consts().siplus.recip().unwrap();
    // candidate structure from the restriction-proof display:
    // q^-2 b4[rcp or rcpm] + q^3 b2
    //   - si+^-1 ( q^-2 siv+ c + q^-1 b6[wt] + q^{2N+2} b5[x_il] + q^-2 g1 ) H
    for b4rcp in [false, true] {
        let mut fails = 0;
        for i in 1..=n as u8 { for j in 1..=n as u8 { for k in 1..=n as u8 { for l in 1..=n as u8 {
            let mut cand = OneForm::zero();
            // b4 part
            if b4rcp {
                for (idx, c1) in eng.fam.rcp.entries() {
                    if idx[4] as u8 != i || idx[5] as u8 != j || idx[6] as u8 != k || idx[7] as u8 != l { continue; }
                    let (x_, y_, z_, w_) = (idx[0] as u8, idx[1] as u8, idx[2] as u8, idx[3] as u8);
                    for (u, c2) in eng.omega_section(z_, w_) {
                        let e = cpq_core::algebra::sphere::elem_scale(&f, &eng.embed(&word(&[(x_, y_), (u[0], u[1])])), &(c1 * c2));
                        let e = cpq_core::algebra::sphere::elem_scale(&f, &e, &f.q_pow(-2));
                        cand.add_dx(&eng.sphere, (u[2], u[3]), &e);
                    }
                }
            } else {
                cand.add_scaled(&eng.sphere, &eng.term_shape(term_index("b4").unwrap(), i, j, k, l), &f.q_pow(-2));
            }
            cand.add_scaled(&eng.sphere, &eng.term_shape(term_index("b2").unwrap(), i, j, k, l), &f.q_pow(3));
            // H block
            let mhs = f.neg(&si_inv);
            let cc = f.mul(&mhs, &f.mul(&f.q_pow(-2), &eng.consts().sivplus));
            cand.add_scaled(&eng.sphere, &eng.term_shape(term_index("c").unwrap(), i, j, k, l), &cc);
            let cb6 = f.mul(&mhs, &f.q_pow(-1));
            cand.add_scaled(&eng.sphere, &eng_wt.term_shape(term_index("b6").unwrap(), i, j, k, l), &cb6);
            if j == k {
                let cb5 = f.mul(&mhs, &f.q_pow(2 * nn + 2));
                let mut b5v = OneForm::zero();
                b5v.add_h(&eng.sphere, &eng.embed(&word(&[(i, l)])));
                cand.add_scaled(&eng.sphere, &b5v, &cb5);
            }
            let cg1 = f.mul(&mhs, &f.q_pow(-2));
            cand.add_scaled(&eng.sphere, &eng.term_shape(term_index("g1").unwrap(), i, j, k, l), &cg1);

            let truth = sc.dx_times_x(i, j, k, l);
            let mut diff = truth.clone();
            diff.add_form(&f, &sc.transport(&cand).scale(&f, &f.neg(&f.one())));
            if !span.contains(&fv.vec(&f, &diff)) { fails += 1; }
        }}}}
        println!("b4rcp={b4rcp}: {} fails / 16", fails);
    }
}
