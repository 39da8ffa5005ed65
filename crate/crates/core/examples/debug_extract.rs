use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::calculus::engine::TERM_NAMES;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
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
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    let lam = f.q_pow(2 * n as i64 + 2);
    let sc = SphereCalcEngine::new(&eng, &SphereFamilyId::GammaTPp { lambda: lam }).unwrap();
    let rel = sc.relation_form().unwrap();
    let fv = FormVec::new();
    let mut span: Echelon<SampledField> = Echelon::new(f.clone());
    for m in monomials(n as usize, 5) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        span.insert(fv.vec(&f, &sc.left_mul_form_pub(&rel, &me)));
    }
    // unknown columns 1000+t, coordinate rows: sum_t u_t shape_t - truth = 0
    let mut sys: Echelon<SampledField> = Echelon::new(f.clone());
    let ucol = |t: usize| 2_000_000u64 + t as u64;
    for i in 1..=n as u8 { for j in 1..=n as u8 { for k in 1..=n as u8 { for l in 1..=n as u8 {
        let truth = sc.dx_times_x(i, j, k, l);
        let tv = span.reduce(&fv.vec(&f, &truth));
        let mut rows: BTreeMap<u64, Vec<(u64, Rat)>> = BTreeMap::new();
        for (c, v) in tv.cols { rows.entry(c).or_default().push((3_000_000, -&v)); }
        for t in 0..cpq_core::calculus::NUM_TERMS {
            let shape = eng.term_shape(t, i, j, k, l);
            let sform = sc.transport(&shape);
            let sv = span.reduce(&fv.vec(&f, &sform));
            for (c, v) in sv.cols { rows.entry(c).or_default().push((ucol(t), v)); }
        }
        for (_, cols) in rows {
            sys.insert(SparseRow::from_unsorted(&f, cols));
        }
    }}}}
    println!("system rank: {} (27 unknowns + rhs)", sys.rank());
    let inconsistent = sys.row_for_pivot(3_000_000).is_some();
    println!("inconsistent: {inconsistent}");
    if !inconsistent {
        for t in 0..cpq_core::calculus::NUM_TERMS {
            if let Some(row) = sys.row_for_pivot(ucol(t)) {
                if row.cols.len() == 1 {
                    println!("  {} = 0", TERM_NAMES[t]);
                } else if row.cols.len() == 2 && row.cols[1].0 == 3_000_000 {
                    println!("  {} = {}", TERM_NAMES[t], -&row.cols[1].1);
                } else {
                    let terms: Vec<String> = row.cols.iter().map(|(c, v)| format!("{}:{}", c, v)).collect();
                    println!("  {} row: {:?}", TERM_NAMES[t], terms);
                }
            } else {
                println!("  {} FREE", TERM_NAMES[t]);
            }
        }
    }
}
