use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::calculus::conditions::RelationData;
use cpq_core::calculus::oneform::OneForm;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
use cpq_core::calculus::values::{published_relation, CalculusId};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use std::cell::RefCell;
use std::collections::BTreeMap;

struct FormVec { ids: RefCell<BTreeMap<(u16, SphereMonomial), u64>> }
impl FormVec {
    fn new() -> Self { FormVec { ids: RefCell::new(BTreeMap::new()) } }
    fn vec(&self, f: &SampledField, form: &SphereForm<Rat>) -> SparseRow<Rat> {
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
        SparseRow::from_unsorted(f, cols)
    }
}

fn monomials(n: usize, dmax: u32) -> Vec<SphereMonomial> {
    let mut out = Vec::new();
    let mut stack = vec![(vec![0u8; 2 * n], 0usize)];
    while let Some((exps, pos)) = stack.pop() {
        if pos == 2 * n {
            let z: smallvec::SmallVec<[u8; 8]> = exps[..n].iter().copied().collect();
            let zs: smallvec::SmallVec<[u8; 8]> = exps[n..].iter().copied().collect();
            if !(z[n - 1] > 0 && zs[n - 1] > 0) { out.push(SphereMonomial { z, zs }); }
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
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    let lam = f.q_pow(2 * n as i64 + 2);
    let sc = SphereCalcEngine::new(&eng, &SphereFamilyId::GammaTPp { lambda: lam }).unwrap();
    let rel_form = sc.relation_form().unwrap();
    let fv = FormVec::new();
    let mut span: Echelon<SampledField> = Echelon::new(f.clone());
    for m in monomials(n as usize, 5) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        span.insert(fv.vec(&f, &sc.left_mul_form_pub(&rel_form, &me)));
    }
    // 1. H transport vs basic invariants
    let h_cp = {
        let mut form = OneForm::zero();
        let one = eng.embed(&cpq_core::algebra::Word::new());
        form.add_h(&eng.sphere, &one);
        form
    };
    let ht = sc.transport(&h_cp);
    let hv = span.reduce(&fv.vec(&f, &ht));
    let hp = span.reduce(&fv.vec(&f, &sc.hplus_pub()));
    let hm = span.reduce(&fv.vec(&f, &sc.hminus_pub()));
    println!("H transport nnz {} ; H+ nnz {} ; H- nnz {}", hv.cols.len(), hp.cols.len(), hm.cols.len());
    // decompose hv = a hp + b hm via two coordinates
    'outer: for (c1, _) in hp.cols.iter() {
        for (c2, _) in hm.cols.iter() {
            if c1 == c2 { continue; }
            let a11 = hp.get(*c1).cloned().unwrap_or(Rat::zero());
            let a12 = hm.get(*c1).cloned().unwrap_or(Rat::zero());
            let a21 = hp.get(*c2).cloned().unwrap_or(Rat::zero());
            let a22 = hm.get(*c2).cloned().unwrap_or(Rat::zero());
            let det = &(&a11 * &a22) - &(&a12 * &a21);
            if det.is_zero() { continue; }
            let t1 = hv.get(*c1).cloned().unwrap_or(Rat::zero());
            let t2 = hv.get(*c2).cloned().unwrap_or(Rat::zero());
            let di = det.recip().unwrap();
            let a = &(&(&t1 * &a22) - &(&t2 * &a12)) * &di;
            let b = &(&(&t2 * &a11) - &(&t1 * &a21)) * &di;
            let mut resid = hv.clone();
            resid = resid.sub_scaled(&f, &a, &hp);
            resid = resid.sub_scaled(&f, &b, &hm);
            println!("H = ({a}) H+ + ({b}) H-  residual nnz {}", resid.cols.len());
            break 'outer;
        }
    }
    // 2. the constraint relation on the ground truth
    let relv = published_relation(&eng, CalculusId::GammaTilde).unwrap();
    let rel_cp = RelationData { a: relv.a.clone(), b: relv.b.clone(), c: relv.c.clone(), d: relv.d.clone(), h_zero: false };
    for (i, j) in [(1u8, 1u8), (1, 2), (2, 2)] {
        let mut lhs = OneForm::bare_dx(&eng.sphere, (i, j));
        lhs.add_scaled(&eng.sphere, &rel_cp.rhs(&eng, i, j), &f.neg(&f.one()));
        let t = sc.transport(&lhs);
        let r = span.reduce(&fv.vec(&f, &t));
        println!("relation residual ({i},{j}): nnz {}", r.cols.len());
    }
}
