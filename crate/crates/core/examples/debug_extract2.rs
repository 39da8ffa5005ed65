use cpq_core::algebra::linalg::{Echelon, SparseRow};
use cpq_core::algebra::sphere::SphereMonomial;
use cpq_core::algebra::word;
use cpq_core::calculus::engine::{PsiVariant, TERM_NAMES};
use cpq_core::calculus::oneform::OneForm;
use cpq_core::calculus::sphere_calc::{SphereCalcEngine, SphereFamilyId, SphereForm};
use cpq_core::calculus::Engine;
use cpq_core::coeff::{Field, Rat, SampledField};
use cpq_core::algebra::Convention;
use std::cell::RefCell;
use std::collections::BTreeMap;

struct FormVec { ids: RefCell<BTreeMap<(u16, SphereMonomial), u64>> }
impl FormVec {
    fn new() -> Self { FormVec { ids: RefCell::new(BTreeMap::new()) } }
    fn vec(&self, f: &SampledField, form: &SphereForm<Rat>) -> SparseRow<Rat> {
        let mut cols = Vec::new();
        for (block, part) in [(0u16, &form.dz), (256u16, &form.dzs)] {
            for (t, e) in part {
                for (m, c) in e {
                    let key = (block + *t as u16, m.clone());
                    let mut ids = self.ids.borrow_mut();
                    let next = ids.len() as u64;
                    let id = *ids.entry(key).or_insert(next);
                    cols.push((id, c.clone()));
                }
            }
        }
        SparseRow::from_unsorted(f, cols)
    }
}

fn monomials(n: usize, dmax: u32) -> Vec<SphereMonomial> {
    let mut out = Vec::new();
    let mut stack = vec![(vec![0u8; 2 * n], 0usize)];
    while let Some((exps, pos)) = stack.pop() {
        if pos == 2 * n {
            let z: smallvec::SmallVec<[u8; 8]> = exps[..n].iter().copied().collect();
            let zs: smallvec::SmallVec<[u8; 8]> = exps[n..].iter().copied().collect();
            if !(z[n - 1] > 0 && zs[n - 1] > 0) { out.push(SphereMonomial { z, zs }); }
            continue;
        }
        let used: u32 = exps.iter().map(|&e| e as u32).sum();
        for v in 0..=(dmax - used) {
            let mut e2 = exps.clone();
            e2[pos] = v as u8;
            stack.push((e2, pos + 1));
        }
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let f = SampledField::new(Rat::new(3, 2)).unwrap();
    let eng = Engine::new(f.clone(), n).unwrap();
    let eng_wt = Engine::with_psi_variant(f.clone(), n, Convention::resolved(), PsiVariant::WeightedTrace).unwrap();
    let lam = f.q_pow(2 * n as i64 + 2);
    let sc = SphereCalcEngine::new(&eng, &SphereFamilyId::GammaTPp { lambda: lam }).unwrap();
    let rel = sc.relation_form().unwrap();
    let fv = FormVec::new();
    let mut span: Echelon<SampledField> = Echelon::new(f.clone());
    for m in monomials(n as usize, 5) {
        let mut me = cpq_core::algebra::SphereElem::new();
        me.insert(m, f.one());
        span.insert(fv.vec(&f, &sc.left_mul_form_pub(&rel, &me)));
    }
    // H with +2 slope variants, built directly as one-forms
    let h_plus2_shape = |w: &[(u8, u8)]| -> OneForm<Rat> {
        let mut out = OneForm::zero();
        for a in 1..=n as u8 { for b in 1..=n as u8 {
            let we = eng.embed(&word(w));
            let xab = eng.embed(&word(&[(a, b)]));
            let coeff = cpq_core::algebra::sphere::elem_scale(&f, &eng.sphere.mul_elems(&we, &xab), &f.q_pow(2 * b as i64));
            out.add_dx(&eng.sphere, (b, a), &coeff);
        }}
        out
    };
    let names: Vec<String> = TERM_NAMES.iter().map(|s| s.to_string())
        .chain(["a7wt", "f2wt", "b6wt", "cH2", "b5H2", "g1H2", "g2H2", "a9H2", "f5H2", "b5v", "b5vH2", "a4rcp", "b4rcp"].iter().map(|s| s.to_string()))
        .collect();
    let nsh = names.len();
    let shape_of = |t: usize, i: u8, j: u8, k: u8, l: u8| -> OneForm<Rat> {
        if t < 27 { return eng.term_shape(t, i, j, k, l); }
        match names[t].as_str() {
            "a7wt" => eng_wt.term_shape(6, i, j, k, l),
            "f2wt" => eng_wt.term_shape(14, i, j, k, l),
            "b6wt" => eng_wt.term_shape(23, i, j, k, l),
            "cH2" => h_plus2_shape(&[(i, j), (k, l)]),
            "b5H2" => if j == k { h_plus2_shape(&[(i, j)]) } else { OneForm::zero() },
            "g1H2" => if i == j { h_plus2_shape(&[(k, l)]).scale(&eng.sphere, &f.q_pow(2 * j as i64)) } else { OneForm::zero() },
            "g2H2" => if k == l { h_plus2_shape(&[(i, j)]).scale(&eng.sphere, &f.q_pow(2 * k as i64)) } else { OneForm::zero() },
            "a9H2" => if j == k && i == l { h_plus2_shape(&[]).scale(&eng.sphere, &f.q_pow(2 * l as i64)) } else { OneForm::zero() },
            "f5H2" => if i == j && k == l { h_plus2_shape(&[]).scale(&eng.sphere, &f.q_pow(2 * (j as i64 + k as i64))) } else { OneForm::zero() },
            "b5v" => if j == k {
                let mut out = OneForm::zero();
                let e = eng.embed(&word(&[(i, l)]));
                out.add_h(&eng.sphere, &e);
                out
            } else { OneForm::zero() },
            "b5vH2" => if j == k { h_plus2_shape(&[(i, l)]) } else { OneForm::zero() },
            "a4rcp" => {
                // (RCP RCPc) x dx variant
                let mut out = OneForm::zero();
                for (idx, c) in eng.fam.rcp.entries() {
                    let (s_, t_, u_, v_) = (idx[0] as u8, idx[1] as u8, idx[2] as u8, idx[3] as u8);
                    let (w_, x_, y_, z_) = (idx[4] as u8, idx[5] as u8, idx[6] as u8, idx[7] as u8);
                    let c2 = eng.fam.rcpc.get(&f, &[w_ as u32, x_ as u32, y_ as u32, z_ as u32, i as u32, j as u32, k as u32, l as u32]);
                    if c2.is_zero() { continue; }
                    let e = cpq_core::algebra::sphere::elem_scale(&f, &eng.embed(&word(&[(s_, t_)])), &(&c2 * c));
                    out.add_dx(&eng.sphere, (u_, v_), &e);
                }
                out
            }
            "b4rcp" => {
                let mut out = OneForm::zero();
                for (idx, c1) in eng.fam.rcp.entries() {
                    if idx[4] as u8 != i || idx[5] as u8 != j || idx[6] as u8 != k || idx[7] as u8 != l { continue; }
                    let (x_, y_, z_, w_) = (idx[0] as u8, idx[1] as u8, idx[2] as u8, idx[3] as u8);
                    for (u, c2) in eng.omega_section(z_, w_) {
                        let e = cpq_core::algebra::sphere::elem_scale(&f, &eng.embed(&word(&[(x_, y_), (u[0], u[1])])), &(c1 * c2));
                        out.add_dx(&eng.sphere, (u[2], u[3]), &e);
                    }
                }
                out
            }
            _ => unreachable!(),
        }
    };
    let mut sys: Echelon<SampledField> = Echelon::new(f.clone());
    let ucol = |t: usize| 2_000_000u64 + t as u64;
    for i in 1..=n as u8 { for j in 1..=n as u8 { for k in 1..=n as u8 { for l in 1..=n as u8 {
        let truth = sc.dx_times_x(i, j, k, l);
        let tv = span.reduce(&fv.vec(&f, &truth));
        let mut rows: BTreeMap<u64, Vec<(u64, Rat)>> = BTreeMap::new();
        for (c, v) in tv.cols { rows.entry(c).or_default().push((3_000_000, -&v)); }
        for t in 0..nsh {
            let sform = sc.transport(&shape_of(t, i, j, k, l));
            let sv = span.reduce(&fv.vec(&f, &sform));
            for (c, v) in sv.cols { rows.entry(c).or_default().push((ucol(t), v)); }
        }
        for (_, cols) in rows { sys.insert(SparseRow::from_unsorted(&f, cols)); }
    }}}}
    println!("rank: {}", sys.rank());
    println!("inconsistent: {}", sys.row_for_pivot(3_000_000).is_some());
    if sys.row_for_pivot(3_000_000).is_none() {
        for t in 0..nsh {
            if let Some(row) = sys.row_for_pivot(ucol(t)) {
                let terms: Vec<String> = row.cols.iter().skip(1).map(|(c, v)| {
                    let nm = if *c == 3_000_000 { "rhs".to_string() } else { names[(*c - 2_000_000) as usize].clone() };
                    format!("{}*{}", v, nm)
                }).collect();
                println!("  {} = -({})", names[t], terms.join(" + "));
            } else {
                println!("  {} FREE", names[t]);
            }
        }
    }
}
