use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::calculus::conditions::DxExpander;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
use cpq_core::calculus::values::{published_coefficients, CalculusId};
use cpq_core::calculus::verify::AnsatzExpander;
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use std::collections::BTreeMap;
use std::cell::RefCell;

struct FormVec { ids: RefCell<BTreeMap<(u16, SphereMonomial), u64>> }
impl FormVec {
    fn new() -> Self { FormVec { ids: RefCell::new(BTreeMap::new()) } }
    fn vec(&self, f: &SampledField, form: &SphereForm<Rat>) -> SparseRow<Rat> {
        let mut cols = Vec::new();
        for (t, e) in &form.dz {
            for (m, c) in e {
                let key = (*t as u16, m.clone());
                let mut ids = self.ids.borrow_mut();
                let next = ids.len() as u64;
                let id = *ids.entry(key).or_insert(next);
                cols.push((id, c.clone()));
            }
        }
        for (t, e) in &form.dzs {
            for (m, c) in e {
                let key = (256 + *t as u16, m.clone());
                let mut ids = self.ids.borrow_mut();
                let next = ids.len() as u64;
                let id = *ids.entry(key).or_insert(next);
                cols.push((id, c.clone()));
            }
        }
        SparseRow::from_unsorted(f, cols)
    }
}

fn monomials(n: usize, dmax: u32) -> Vec<SphereMonomial> {
    // all normal exponent pairs with total degree <= dmax
    let mut out = Vec::new();
    let mut stack = vec![(vec![0u8; 2 * n], 0usize)];
    while let Some((exps, pos)) = stack.pop() {
        if pos == 2 * n {
            let z: smallvec::SmallVec<[u8; 8]> = exps[..n].iter().copied().collect();
            let zs: smallvec::SmallVec<[u8; 8]> = exps[n..].iter().copied().collect();
            if !(z[n - 1] > 0 && zs[n - 1] > 0) {
                out.push(SphereMonomial { z, zs });
            }
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
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("tpp");
    let target = args.get(2).map(|s| s.as_str()).unwrap_or("gamma-tilde");
    let lam = match which {
        "tpp" => f.q_pow(2 * n as i64 + 2),
        "tp" => f.q_pow(4),
        "tl" => f.q_pow(2),
        _ => f.q_pow(1),
    };
    let famid = match which {
        "tpp" => SphereFamilyId::GammaTPp { lambda: lam },
        "tp" => SphereFamilyId::GammaTP { lambda: lam },
        "tl" => SphereFamilyId::GammaTL { lambda: lam },
        _ => panic!(),
    };
    let sc = SphereCalcEngine::new(&eng, &famid).unwrap();
    let rel = sc.relation_form().unwrap();
    let fv = FormVec::new();
    let mut span: Echelon<SampledField> = Echelon::new(f.clone());
    for m in monomials(n as usize, 5) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        let g = sc.left_mul_form_pub(&rel, &me);
        span.insert(fv.vec(&f, &g));
    }
    println!("relation span rank: {}", span.rank());
    let tid = CalculusId::parse(target).unwrap();
    let ex = AnsatzExpander::new(published_coefficients(&eng, tid));
    let mut fails = 0;
    for i in 1..=n as u8 { for j in 1..=n as u8 { for k in 1..=n as u8 { for l in 1..=n as u8 {
        let truth = sc.dx_times_x(i, j, k, l);
        let cand = sc.transport(&DxExpander::<SampledField>::expand(&ex, &eng, i, j, k, l));
        let mut diff = truth.clone();
        diff.add_form(&f, &cand.scale(&f, &f.neg(&f.one())));
        if !span.contains(&fv.vec(&f, &diff)) { fails += 1; }
    }}}}
    println!("published {target} vs {which}-restriction mod relation span: {} fails / 16", fails);
}
