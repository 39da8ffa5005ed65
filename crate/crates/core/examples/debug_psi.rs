use cpq_core::coeff::{Field, Rat, SampledField};
use cpq_core::rmatrix::build_family;
use cpq_core::tensor::einsum;

fn main() {
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    for n in [2u32, 3] {
        let fam = build_family(&f, n).unwrap();
        // psi (tRest reading): Rr^{ab}_{jk} Rm^{sc}_{ia} Rc^{cv}_{bl}
        let psi = einsum(&f, "abjk,scia,cvbl->svijkl", &[&fam.rr, &fam.rm, &fam.rc]).unwrap();
        // sRest proof reading: sum_a q^{2a} Rm^{sa}_{ic} Rc^{at}_{dl} Rr^{cd}_{jk}
        let mut rm_w = cpq_core::tensor::Tensor::new(fam.rm.shape());
        for (idx, v) in fam.rm.entries() {
            let a = idx[1] as i64; // upper second index of Rm^{sa}_{ic}
            rm_w.set_entry(&f, idx, f.mul(v, &f.q_pow(2 * a)));
        }
        let t2 = einsum(&f, "saic,atdl,cdjk->stijkl", &[&rm_w, &fam.rc, &fam.rr]).unwrap();
        println!("N={n}: psi == t2 ? {}   psi nnz {}  t2 nnz {}", psi == t2, psi.num_entries(), t2.num_entries());
        if psi != t2 {
            // show one differing entry
            for (idx, v) in t2.entries() {
                let w = psi.get(&f, idx);
                if &w != v {
                    println!("  first diff at {idx:?}: psi={w} t2={v}");
                    break;
                }
            }
        }
    }
}
