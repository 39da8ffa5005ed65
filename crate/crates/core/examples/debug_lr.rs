use cpq_core::repdecomp::*;

fn main() {
    let n = 5u32;
    let adj = pi_frame(n, 1);
    println!("pi(1) = {adj:?} dim {}", adj.dim_u64(n).unwrap());
    // T = (pi1+pi0) x (pi1+pi0)
    let mut t = lr_tensor(&adj, &adj, n).unwrap();
    t.add(adj.clone(), 2);
    t.add(Frame::trivial(), 1);
    println!("T:");
    for (f, m) in &t.mults {
        println!("  {m} x {f:?} dim {}", f.dim_u64(n).unwrap());
    }
    for k in 0..=4u32 {
        let pk = pi_frame(n, k);
        let mut tk = lr_tensor(&pk, &adj, n).unwrap();
        tk.add(pk.clone(), 1);
        let mut common = vec![];
        for (f, _) in &t.mults {
            if tk.mult(f) > 0 { common.push(format!("{f:?}")); }
        }
        println!("k={k}: pi(k)={pk:?} common {} -> {:?}", common.len(), common);
        println!("   pi({k}) x g:");
        for (f, m) in &tk.mults {
            println!("     {m} x {f:?} dim {}", f.dim_u64(n).unwrap());
        }
    }
    match morphism_count(5, 6) {
        Ok(mc) => println!("mc: per_k {:?} raw {} after {}", mc.per_k_common, mc.raw_total, mc.after_trace_condition),
        Err(e) => println!("err {e}"),
    }
}
