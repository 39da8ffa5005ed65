use cpq_core::calculus::conditions::{Condition, DxExpander};
use cpq_core::calculus::engine::{term_index, NUM_TERMS};
use cpq_core::calculus::values::{published_relation, CalculusId};
use cpq_core::calculus::verify::{AnsatzExpander, RelationSpan, Vectorizer};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};

fn main() {
    let n = 3u32;
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    let mut coeffs = vec![f.zero(); NUM_TERMS];
    coeffs[term_index("b2").unwrap()] = f.q_pow(3);
    coeffs[term_index("b4").unwrap()] = f.q_pow(-2);
    coeffs[term_index("a9").unwrap()] = Rat::new(-1296, 16393);
    coeffs[term_index("f5").unwrap()] = Rat::new(-4096, 1327833);
    coeffs[term_index("g2").unwrap()] = Rat::new(16, 117);
    coeffs[term_index("c").unwrap()] = Rat::new(-793, 144);
    let ex = AnsatzExpander::new(coeffs);
    let rel = published_relation(&eng, CalculusId::GammaTilde).unwrap();
    let vz = Vectorizer::new();
    let span = RelationSpan::build(&eng, &rel, 4, &vz);
    let idx = vec![1u8, 1, 1, 1];
    let r = Condition::Kl8.residual(&eng, &ex, Some(&rel), &idx);
    let r = r.expand_h(&eng.sphere, &eng.conv);
    let vr = vz.vectorize(&f, &r);
    println!("residual nnz before reduction: {}", vr.cols.len());
    // reduce against the span (constant case = reduce_param with no vars)
    let pf = cpq_core::coeff::ParamField::new(f.clone(), vec![]);
    let vrp = cpq_core::algebra::linalg::SparseRow {
        cols: vr.cols.iter().map(|(c, v)| (*c, pf.constant(v.clone()))).collect(),
    };
    let red = span.reduce_param(&pf, vrp);
    println!("leftover nnz: {}", red.cols.len());
    // decode columns: atom code and monomial degree
    let mut by_deg: std::collections::BTreeMap<(u64, u32), usize> = Default::default();
    for (c, _) in &red.cols {
        let atom = c >> 40;
        let _mono = c & ((1 << 40) - 1);
        by_deg.entry((atom, 0), ).and_modify(|e| *e += 1).or_insert(1);
    }
    for ((atom, _), count) in by_deg {
        let name = if atom == 0xffff { "H".to_string() } else { format!("dx_{}{}", atom >> 8, atom & 0xff) };
        println!("  atom {name}: {count} coords");
    }
}
