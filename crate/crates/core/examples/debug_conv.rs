use cpq_core::calculus::convention::resolve_convention_with_checks;
use cpq_core::coeff::{Rat, SampledField};

fn main() {
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    match resolve_convention_with_checks(&f) {
        Ok((conv, checks)) => {
            println!("resolved: {conv:?}");
            for c in checks {
                if c.implied_ok {
                    println!("{} {} {} -> {:?}", c.sum_l_slope, c.sum_r_slope, c.delta_slope, c.pattern_note);
                }
            }
        }
        Err(e) => {
            let msg = e.to_string();
            for line in msg.split("CandidateCheck") {
                if line.contains("implied_ok: true") {
                    println!("CAND: {line}");
                }
            }
        }
    }
}
