use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::calculus::conditions::{Condition, DxExpander, RelationData};
use cpq_core::calculus::engine::{term_index, NUM_TERMS};
use cpq_core::calculus::oneform::OneForm;
use cpq_core::calculus::values::{published_relation, CalculusId};
use cpq_core::calculus::verify::{RelationSpan, Vectorizer};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, ParamField, ParamPoly, Rat, SampledField};
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
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let use_kl8 = args.get(2).map(|s| s == "kl8").unwrap_or(false);
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let variant = if args.get(4).map(|s| s == "wt").unwrap_or(false) {
        cpq_core::calculus::engine::PsiVariant::WeightedTrace
    } else {
        cpq_core::calculus::engine::PsiVariant::Sandwich
    };
    let eng = Engine::with_psi_variant(f.clone(), n, cpq_core::algebra::Convention::resolved(), variant).unwrap();
    let hvars = ["a9", "f5", "b5", "b6", "g1", "g2", "c"];
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
    let pad: u32 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(4);
    let span = RelationSpan::build(&eng, &rel_b, pad, &vz);
    let mut ech: Echelon<SampledField> = Echelon::new(f.clone());
    let conds = if use_kl8 {
        vec![Condition::Kl1, Condition::Kl2, Condition::Kl3, Condition::Kl4, Condition::Kl5, Condition::Kl8]
    } else {
        vec![Condition::Kl1, Condition::Kl2, Condition::Kl3, Condition::Kl4, Condition::Kl5]
    };
    for cond in conds {
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
                } else {
                    println!("NONAFFINE");
                }
            }
        }
        println!("after {}: rank={} inconsistent={}", cond.name(), ech.rank(), ech.row_for_pivot(7).is_some());
    }
    for v in 0..7u64 {
        if let Some(row) = ech.row_for_pivot(v) {
            let val: Vec<String> = row.cols.iter().map(|(c, x)| format!("{}:{}", if *c == 7 {"const".into()} else {hvars[*c as usize].to_string()}, x)).collect();
            println!("pivot {}: {:?}", hvars[v as usize], val);
        } else {
            println!("free: {}", hvars[v as usize]);
        }
    }
}
