use cpq_core::calculus::solver::{solve_report, Case, SolveOptions};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Rat, SampledField};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let case = args.get(2).map(|s| s.as_str()).unwrap_or("red2");
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let t0 = Instant::now();
    let eng = Engine::new(f, n).unwrap();
    println!("engine built in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let out = cpq_core::calculus::solver::solve_case(&eng, Case::parse(case).unwrap(), &SolveOptions::default()).unwrap();
    println!("inconsistent={} rank={}", out.inconsistent, out.linear_rank);
    let rep = solve_report(&eng, Case::parse(case).unwrap(), "sampled", &SolveOptions::default()).unwrap();
    println!("solve {} N={} in {:?}", case, n, t0.elapsed());
    println!("solution_dim = {}, free = {:?}, contained = {}", rep.solution_dim, rep.free_parameters, rep.paper_contained);
    for (k, v) in &rep.coefficients {
        let m = rep.paper_match.get(k).map(|b| if *b {"MATCH"} else {"DIFFER"}).unwrap_or("?");
        println!("  {k} = {v}   [{m}]");
    }
}
