use cpq_core::algebra::{build_sphere, Convention};
use cpq_core::coeff::{Rat, SampledField, SymbolicField, Field};
use cpq_core::rmatrix::build_family;

fn main() {
    let f = SymbolicField;
    let fam = build_family(&f, 2).unwrap();
    let sph = build_sphere(&f, &fam, &Convention::resolved()).unwrap();
    println!("N=2 provenance: {}", sph.rules.provenance);
    println!("sigma = {}", f.render(&sph.rules.sigma));
    for (idx, v) in sph.rules.inv.entries() {
        println!("  z*_{} z_{} has z_{} z*_{} coeff {}", idx[0], idx[1], idx[2], idx[3], f.render(v));
    }
    for (idx, v) in sph.rules.konst.entries() {
        println!("  z*_{} z_{} const {}", idx[0], idx[1], f.render(v));
    }
    let fs = SampledField::new(Rat::new(3, 2)).unwrap();
    let fam3 = build_family(&fs, 3).unwrap();
    let sph3 = build_sphere(&fs, &fam3, &Convention::resolved()).unwrap();
    println!("N=3 provenance: {}", sph3.rules.provenance);
}
