use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId};
use cpq_core::calculus::values::{published_coefficients, CalculusId};
use cpq_core::calculus::verify::AnsatzExpander;
use cpq_core::calculus::conditions::DxExpander;
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use cpq_core::algebra::sphere::Letter;

fn main() {
    let n = 2u32;
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    // Gamma-tilde-double-prime with lambda = q^{2N+2} restricts to gamma-tilde
    let lam = f.q_pow(2 * n as i64 + 2);
    let fam = SphereFamilyId::GammaTPp { lambda: lam };
    let sc = SphereCalcEngine::new(&eng, &fam).unwrap();

    // sanity: d applied to the zz algebra relation must vanish mod the
    // module relation: d(z_2 z_1 - q^-1 z_1 z_2) = dz_2 z_1 + z_2 dz_1 - ...
    let one = || { let mut e = cpq_core::algebra::SphereElem::new(); e.insert(cpq_core::algebra::SphereMonomial::one(n), f.one()); e };
    let mut dz2 = cpq_core::calculus::sphere_calc::SphereForm::zero();
    dz2.add_dz(&f, 2, &one());
    let t1 = sc.form_mul_letter(&dz2, Letter::Z(1)); // dz_2 . z_1
    let z2 = eng.sphere.mul_elem_letter(&one(), Letter::Z(2));
    let mut t2 = cpq_core::calculus::sphere_calc::SphereForm::zero();
    t2.add_dz(&f, 1, &z2); // z_2 dz_1
    let mut lhs = t1.clone();
    lhs.add_form(&f, &t2);
    let mut dz1 = cpq_core::calculus::sphere_calc::SphereForm::zero();
    dz1.add_dz(&f, 1, &one());
    let s1 = sc.form_mul_letter(&dz1, Letter::Z(2));
    let z1 = eng.sphere.mul_elem_letter(&one(), Letter::Z(1));
    let mut s2 = cpq_core::calculus::sphere_calc::SphereForm::zero();
    s2.add_dz(&f, 2, &z1);
    let mut rhs = s1.clone();
    rhs.add_form(&f, &s2);
    let qinv = f.q_pow(-1);
    let mut resid = lhs.clone();
    resid.add_form(&f, &rhs.scale(&f, &f.neg(&qinv)));
    println!("d(zz relation) residual zero: {}", resid.is_zero());

    // ground truth vs published gamma-tilde for a few tuples
    let ex = AnsatzExpander::new(published_coefficients(&eng, CalculusId::GammaTilde));
    let mut all_eq = true;
    for i in 1..=n as u8 { for j in 1..=n as u8 { for k in 1..=n as u8 { for l in 1..=n as u8 {
        let truth = sc.dx_times_x(i, j, k, l);
        let cand = sc.transport(&DxExpander::<SampledField>::expand(&ex, &eng, i, j, k, l));
        let mut diff = truth.clone();
        diff.add_form(&f, &cand.scale(&f, &f.neg(&f.one())));
        if !diff.is_zero() {
            all_eq = false;
            println!("tuple ({i}{j}{k}{l}): dz atoms {:?}, dzs atoms {:?}", diff.dz.keys().collect::<Vec<_>>(), diff.dzs.keys().collect::<Vec<_>>());
        }
    }}}}
    println!("published gamma-tilde equals restriction everywhere: {all_eq}");
}
