use cpq_core::calculus::conditions::Condition;
use cpq_core::calculus::engine::PsiVariant;
use cpq_core::calculus::values::{published_coefficients, published_relation, CalculusId};
use cpq_core::calculus::verify::{AnsatzExpander, RelationSpan, Vectorizer};
use cpq_core::calculus::Engine;
use cpq_core::algebra::Convention;
use cpq_core::coeff::{Rat, SampledField};

fn main() {
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    for variant in [PsiVariant::Sandwich, PsiVariant::WeightedTrace] {
        let eng = Engine::with_psi_variant(f.clone(), 2, Convention::resolved(), variant).unwrap();
        let id = CalculusId::GammaTilde;
        let ex = AnsatzExpander::new(published_coefficients(&eng, id));
        let rel = published_relation(&eng, id).unwrap();
        let vz = Vectorizer::new();
        let span = RelationSpan::build(&eng, &rel, 4, &vz);
        print!("{variant:?}:");
        for cond in [Condition::Kl1, Condition::Kl2, Condition::Kl3, Condition::Kl4, Condition::Kl5, Condition::Kl8, Condition::Kl7] {
            let mut fails = 0;
            for idx in cond.instances(2) {
                let r = cond.residual(&eng, &ex, Some(&rel), &idx);
                if !span.reduces_to_zero(&eng, &vz, &r) {
                    fails += 1;
                }
            }
            print!("  {}={}", cond.name(), fails);
        }
        println!();
    }
}
