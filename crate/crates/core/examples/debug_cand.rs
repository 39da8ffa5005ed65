use cpq_core::calculus::conditions::{Condition, DxExpander, RelationData, right_mul};
use cpq_core::calculus::engine::{term_index, NUM_TERMS};
use cpq_core::calculus::values::{published_relation, CalculusId};
use cpq_core::calculus::verify::{AnsatzExpander, RelationSpan, Vectorizer};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};

fn main() {
    let n = 3u32;
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    // machine candidate from the kl1..kl5 solve at N=3
    let mut coeffs = vec![f.zero(); NUM_TERMS];
    let set = |c: &mut Vec<Rat>, name: &str, v: Rat| { c[term_index(name).unwrap()] = v; };
    set(&mut coeffs, "b2", f.q_pow(3));
    set(&mut coeffs, "b4", f.q_pow(-2));
    set(&mut coeffs, "a9", Rat::new(-1296, 16393));
    set(&mut coeffs, "f5", Rat::new(-4096, 1327833));
    set(&mut coeffs, "g2", Rat::new(16, 117));
    set(&mut coeffs, "c", Rat::new(-793, 144));
    let ex = AnsatzExpander::new(coeffs);
    let rel = published_relation(&eng, CalculusId::GammaTilde).unwrap();
    let vz = Vectorizer::new();
    let span = RelationSpan::build(&eng, &rel, 4, &vz);
    for cond in [Condition::Kl1, Condition::Kl5, Condition::Kl7, Condition::Kl8] {
        let mut fails = 0; let mut total = 0;
        for idx in cond.instances(n) {
            total += 1;
            let r = cond.residual(&eng, &ex, Some(&rel), &idx);
            if !span.reduces_to_zero(&eng, &vz, &r) { fails += 1; }
        }
        println!("{}: {}/{} failures", cond.name(), fails, total);
    }
    // kl8 literal: (A sumL + B omega))-parts only, right-multiplied
    let rel_lit = RelationData { a: rel.a.clone(), b: rel.b.clone(), c: f.zero(), d: f.zero(), h_zero: false };
    let mut fails = 0; let mut total = 0;
    for idx in Condition::Kl8.instances(n) {
        total += 1;
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let rhs = rel_lit.rhs(&eng, i, j);
        let mut r = right_mul(&eng, &rhs, k, l, &ex);
        r.add_scaled(&eng.sphere, &DxExpander::<SampledField>::expand(&ex, &eng, i, j, k, l), &f.neg(&f.one()));
        if !span.reduces_to_zero(&eng, &vz, &r) { fails += 1; }
    }
    println!("kl8-literal: {}/{} failures", fails, total);
}
