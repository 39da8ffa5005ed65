use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use std::cell::RefCell;
use std::collections::BTreeMap;

struct FormVec { ids: RefCell<BTreeMap<(u16, SphereMonomial), u64>>, rev: RefCell<BTreeMap<u64, (u16, SphereMonomial)>> }
impl FormVec {
    fn new() -> Self { FormVec { ids: RefCell::new(BTreeMap::new()), rev: RefCell::new(BTreeMap::new()) } }
    fn vec(&self, f: &SampledField, form: &SphereForm<Rat>) -> SparseRow<Rat> {
        let mut cols = Vec::new();
        for (block, part) in [(0u16, &form.dz), (256u16, &form.dzs)] {
            for (t, e) in part {
                for (m, c) in e {
                    let key = (block + *t as u16, m.clone());
                    let mut ids = self.ids.borrow_mut();
                    let next = ids.len() as u64;
                    let id = *ids.entry(key.clone()).or_insert(next);
                    self.rev.borrow_mut().insert(id, key);
                    cols.push((id, c.clone()));
                }
            }
        }
        SparseRow::from_unsorted(f, cols)
    }
    fn decode(&self, id: u64) -> String {
        let rev = self.rev.borrow();
        let (atom, m) = rev.get(&id).unwrap();
        let a = if *atom >= 256 { format!("dz*_{}", atom - 256) } else { format!("dz_{}", atom) };
        format!("z^{:?} z*^{:?} {}", m.z.as_slice(), m.zs.as_slice(), a)
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
    for m in monomials(n as usize, 6) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        span.insert(fv.vec(&f, &sc.left_mul_form_pub(&rel_form, &me)));
    }
    for (i, j, k, l) in [(1u8,1u8,1u8,1u8), (1,2,1,1), (1,1,2,1), (2,1,1,2), (1,2,2,1)] {
        let mut big = Echelon::new(f.clone());
        for (c, _v) in span.pivots().zip(std::iter::repeat(())) {
            if let Some(row) = span.row_for_pivot(c) { big.insert(row.clone()); }
        }
        for t in 0..cpq_core::calculus::NUM_TERMS {
            let sform = sc.transport(&eng.term_shape(t, i, j, k, l));
            big.insert(fv.vec(&f, &sform));
        }
        let truth = sc.dx_times_x(i, j, k, l);
        let r = big.reduce(&fv.vec(&f, &truth));
        println!("tuple ({i},{j},{k},{l}): residual nnz {}", r.cols.len());
        for (c, v) in r.cols.iter().take(8) {
            println!("   {} -> {}", fv.decode(*c), v);
        }
    }
}
