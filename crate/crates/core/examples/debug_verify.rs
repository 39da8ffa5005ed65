use cpq_core::calculus::{verify_calculus, factorization_check, CalculusId, Engine};
use cpq_core::coeff::{Rat, SampledField};
use std::time::Instant;

fn main() {
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f, 2).unwrap();
    for id in [CalculusId::Gamma, CalculusId::GammaTilde, CalculusId::GammaTildeTilde] {
        let t0 = Instant::now();
        let rep = verify_calculus(&eng, id, "sampled", None, None).unwrap();
        println!("{}: all_pass={} ({:?})", id.name(), rep.all_pass(), t0.elapsed());
        for c in &rep.conditions {
            if c.failures > 0 {
                println!("   {} {}/{} failures, first {:?}", c.condition, c.failures, c.instances, c.first_failure);
            }
        }
    }
    let t0 = Instant::now();
    let fr = factorization_check(&eng, "sampled").unwrap();
    println!("factorization: {fr:?} ({:?})", t0.elapsed());
}
