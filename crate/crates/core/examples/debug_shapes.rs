use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::Convention;
use cpq_core::calculus::conditions::{Condition, DxExpander, RelationData};
use cpq_core::calculus::engine::{term_index, HBlockSlopes, PsiVariant, NUM_TERMS};
use cpq_core::calculus::oneform::OneForm;
use cpq_core::calculus::values::{published_relation, CalculusId};
use cpq_core::calculus::verify::{RelationSpan, Vectorizer};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use std::cell::RefCell;
use std::collections::HashMap;

struct PA<E> { coeffs: Vec<E>, cache: RefCell<HashMap<[u8;4], OneForm<E>>> }
impl<F: Field> DxExpander<F> for PA<F::E> {
    fn expand(&self, eng: &Engine<F>, i: u8, j: u8, k: u8, l: u8) -> OneForm<F::E> {
        if let Some(h) = self.cache.borrow().get(&[i,j,k,l]) { return h.clone(); }
        let mut out = OneForm::zero();
        for (t, c) in self.coeffs.iter().enumerate() {
            if eng.field.is_zero(c) { continue; }
            out.add_scaled(&eng.sphere, &eng.term_shape(t, i, j, k, l), c);
        }
        self.cache.borrow_mut().insert([i,j,k,l], out.clone());
        out
    }
}

fn main() {
    let n = 3u32;
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let hvars = ["a9", "f5", "b5", "b6", "g1", "g2", "c"];
    for psi in [PsiVariant::Sandwich, PsiVariant::WeightedTrace] {
        for sa9 in [2i64, -2] { for sf5 in [2i64, -2] { for sg1 in [2i64, -2] { for sg2 in [2i64, -2] {
            let slopes = HBlockSlopes { a9: sa9, f5: sf5, g1: sg1, g2: sg2 };
            let eng = Engine::with_shape_options(f.clone(), n, Convention::resolved(), psi, slopes).unwrap();
            let peng = eng.lift(hvars.iter().map(|s| s.to_string()).collect()).unwrap();
            let pf = peng.field.clone();
            let mut coeffs = vec![pf.zero(); NUM_TERMS];
            coeffs[term_index("b2").unwrap()] = pf.q_pow(3);
            coeffs[term_index("b4").unwrap()] = pf.q_pow(-2);
            for (vi, name) in hvars.iter().enumerate() {
                coeffs[term_index(name).unwrap()] = pf.var(vi);
            }
            let ex = PA { coeffs, cache: RefCell::new(HashMap::new()) };
            let rel_b = published_relation(&eng, CalculusId::GammaTilde).unwrap();
            let rel_p = RelationData {
                a: pf.constant(rel_b.a.clone()), b: pf.constant(rel_b.b.clone()),
                c: pf.constant(rel_b.c.clone()), d: pf.constant(rel_b.d.clone()), h_zero: false,
            };
            let vz = Vectorizer::new();
            let span = RelationSpan::build(&eng, &rel_b, 4, &vz);
            let mut ech: Echelon<SampledField> = Echelon::new(f.clone());
            let mut bad = false;
            'conds: for cond in [Condition::Kl1, Condition::Kl2, Condition::Kl3, Condition::Kl4, Condition::Kl5, Condition::Kl8] {
                for idx in cond.instances(n) {
                    let r = cond.residual(&peng, &ex, Some(&rel_p), &idx);
                    let r = r.expand_h(&peng.sphere, &peng.conv);
                    let vr = vz.vectorize(&pf, &r);
                    let vr = span.reduce_param(&pf, vr);
                    for (_, poly) in vr.cols {
                        if let Some((c, lin)) = poly.as_affine(7) {
                            let mut cols: Vec<(u64, Rat)> = lin.into_iter().map(|(v, e)| (v as u64, e.clone())).collect();
                            if let Some(c) = c { cols.push((7u64, c.clone())); }
                            ech.insert(SparseRow::from_unsorted(&f, cols));
                            if ech.row_for_pivot(7).is_some() { bad = true; break 'conds; }
                        }
                    }
                }
            }
            if !bad {
                println!("CONSISTENT: psi={psi:?} a9={sa9} f5={sf5} g1={sg1} g2={sg2} rank={}", ech.rank());
                for v in 0..7u64 {
                    if let Some(row) = ech.row_for_pivot(v) {
                        let terms: Vec<String> = row.cols.iter().map(|(c, x)| format!("{}:{}", if *c == 7 {"const".into()} else {hvars[*c as usize].to_string()}, x)).collect();
                        println!("   {:?}", terms);
                    }
                }
            }
        }}}}
    }
    println!("search done");
}
