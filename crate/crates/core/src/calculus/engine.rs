//! The calculus engine: R-matrix family, sphere model, convention, and the
//! 27 ansatz term shapes.
//!
//! Every term of the bimodule ansatz for dx_ij . x_kl is a contraction
//! recipe producing a one-form from the index tuple. Coefficient names, in
//! display order:
//!
//! ```text
//! a1  x_ij dx_kl                      a2  RCPm x dx        a3  RCPc x dx
//! a4  (RCPm RCPc) x dx               a5  d_jk sumL_s x_is dx_sl
//! a6  d_jk omega(i,l)                a7  psi(i,j,k,l) sumL_t x_st dx_tv
//! a8  sumR_b Rr Rrm Rl Rlm x dx      a9  d_jk d_il q^{2l} H
//! e1..e4  d_ij q^{2j} / d_kl q^{2k} variants of a5/a6
//! f1..f4  bare-dx variants           f5  d_ij d_kl q^{2j+2k} H
//! b1..b4  degree-2 variants          b5, b6, g1, g2, c  x H terms
//! ```
//!
//! with omega(i,l) = sum_a Rlm^{tu}_{bc} Rm^{sb}_{ia} Rc^{cv}_{al} x_st dx_uv
//! and psi the Rr-Rm-Rc sandwich Rr^{ab}_{jk} Rm^{sc}_{ia} Rc^{cv}_{bl}.
//! The delta-term weights carry the resolved exponent slope +2; the printed
//! ansatz has these exponents negated, which fails the resolver's
//! substitution checks (see [`super::convention`]).

use super::oneform::OneForm;
use crate::algebra::sphere::{build_sphere, elem_scale, SphereAlgebra, SphereElem};
use crate::algebra::{word, AlgebraError, Convention, Word};
use crate::coeff::{Field, ParamField, ParamPoly};
use crate::rmatrix::{build_family, QConstants, RFamily};
use crate::tensor::{einsum, Tensor};
use std::cell::RefCell;
use std::collections::HashMap;

pub const NUM_TERMS: usize = 27;

pub const TERM_NAMES: [&str; NUM_TERMS] = [
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "e1", "e2", "e3", "e4", "f1", "f2",
    "f3", "f4", "f5", "b1", "b2", "b3", "b4", "b5", "b6", "g1", "g2", "c",
];

pub fn term_index(name: &str) -> Option<usize> {
    TERM_NAMES.iter().position(|t| *t == name)
}

/// Section index of an 8-index tensor: lower quadruple -> upper entries.
struct Sect8<E> {
    map: HashMap<[u8; 4], Vec<([u8; 4], E)>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Sect8<E> {
    fn new(t: &Tensor<E>) -> Self {
        let mut map: HashMap<[u8; 4], Vec<([u8; 4], E)>> = HashMap::new();
        for (idx, v) in t.entries() {
            let lower = [idx[4] as u8, idx[5] as u8, idx[6] as u8, idx[7] as u8];
            let upper = [idx[0] as u8, idx[1] as u8, idx[2] as u8, idx[3] as u8];
            map.entry(lower).or_default().push((upper, v.clone()));
        }
        Sect8 { map }
    }

    fn get(&self, lower: [u8; 4]) -> &[([u8; 4], E)] {
        self.map.get(&lower).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Section index of the 6-index omega tensor: (i,l) -> [((s,t),(u,v)), c].
struct SectOmega<E> {
    map: HashMap<[u8; 2], Vec<([u8; 4], E)>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> SectOmega<E> {
    fn new(t: &Tensor<E>) -> Self {
        // axes [s,t,u,v,i,l]
        let mut map: HashMap<[u8; 2], Vec<([u8; 4], E)>> = HashMap::new();
        for (idx, v) in t.entries() {
            let lower = [idx[4] as u8, idx[5] as u8];
            let upper = [idx[0] as u8, idx[1] as u8, idx[2] as u8, idx[3] as u8];
            map.entry(lower).or_default().push((upper, v.clone()));
        }
        SectOmega { map }
    }

    fn get(&self, i: u8, l: u8) -> &[([u8; 4], E)] {
        self.map.get(&[i, l]).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Section index of the 6-index psi tensor: (i,j,k,l) -> [(s,v), c].
struct SectPsi<E> {
    map: HashMap<[u8; 4], Vec<([u8; 2], E)>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> SectPsi<E> {
    fn new(t: &Tensor<E>) -> Self {
        // axes [s,v,i,j,k,l]
        let mut map: HashMap<[u8; 4], Vec<([u8; 2], E)>> = HashMap::new();
        for (idx, v) in t.entries() {
            let lower = [idx[2] as u8, idx[3] as u8, idx[4] as u8, idx[5] as u8];
            let upper = [idx[0] as u8, idx[1] as u8];
            map.entry(lower).or_default().push((upper, v.clone()));
        }
        SectPsi { map }
    }

    fn get(&self, i: u8, j: u8, k: u8, l: u8) -> &[([u8; 2], E)] {
        self.map.get(&[i, j, k, l]).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Reading of the Rr-Rm-Rc sandwich shape shared by the a7, f2 and b6
/// terms. The source displays two inequivalent contraction patterns for it:
/// the ansatz/theorem pattern Rr^{ab}_{jk} Rm^{sc}_{ia} Rc^{cv}_{bl}
/// (`Sandwich`) and the restriction-proof pattern
/// sum_a q^{2a} Rm^{sa}_{ic} Rc^{at}_{dl} Rr^{cd}_{jk} (`WeightedTrace`).
/// Only the weighted-trace reading reproduces the restricted calculus
/// computed from the sphere (see the restriction tests), so it is the
/// default.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PsiVariant {
    Sandwich,
    WeightedTrace,
}

/// Delta-weight exponent slopes of the H-producing ansatz terms. These are
/// not pinned by the convention resolver (no published derivation touches
/// them directly) and are fixed by machine search: the selected assignment
/// is the one under which the reduced-case classification admits a solution
/// (see the shape-resolution tests).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HBlockSlopes {
    pub a9: i64,
    pub f5: i64,
    pub g1: i64,
    pub g2: i64,
}

impl Default for HBlockSlopes {
    fn default() -> Self {
        HBlockSlopes { a9: 2, f5: 2, g1: 2, g2: 2 }
    }
}

/// The assembled engine for one (field, N).
pub struct Engine<F: Field> {
    pub field: F,
    pub n: u32,
    pub conv: Convention,
    pub fam: RFamily<F::E>,
    pub sphere: SphereAlgebra<F>,
    rcpm_s: Sect8<F::E>,
    rcpc_s: Sect8<F::E>,
    rcp_s: Sect8<F::E>,
    rcpcm_s: Sect8<F::E>,
    a4_s: Sect8<F::E>,
    a8_s: Sect8<F::E>,
    omega_s: SectOmega<F::E>,
    psi_s: SectPsi<F::E>,
    pub psi_variant: PsiVariant,
    pub h_slopes: HBlockSlopes,
    term_cache: RefCell<HashMap<(usize, [u8; 4]), OneForm<F::E>>>,
}

impl<F: Field> Engine<F> {
    /// Build with the resolved convention (resolution itself runs at N = 2, 3
    /// inside the given field; see the convention module).
    pub fn new(field: F, n: u32) -> Result<Self, AlgebraError> {
        let conv = super::convention::resolve_convention(&field)?;
        Self::with_convention(field, n, conv)
    }

    pub fn with_convention(field: F, n: u32, conv: Convention) -> Result<Self, AlgebraError> {
        Self::with_psi_variant(field, n, conv, PsiVariant::WeightedTrace)
    }

    pub fn with_psi_variant(
        field: F,
        n: u32,
        conv: Convention,
        psi_variant: PsiVariant,
    ) -> Result<Self, AlgebraError> {
        Self::with_shape_options(field, n, conv, psi_variant, HBlockSlopes::default())
    }

    pub fn with_shape_options(
        field: F,
        n: u32,
        conv: Convention,
        psi_variant: PsiVariant,
        h_slopes: HBlockSlopes,
    ) -> Result<Self, AlgebraError> {
        let fam = build_family(&field, n).map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
        let sphere = build_sphere(&field, &fam, &conv)?;
        Self::assemble(field, n, conv, fam, sphere, psi_variant, h_slopes)
    }

    fn assemble(
        field: F,
        n: u32,
        conv: Convention,
        fam: RFamily<F::E>,
        sphere: SphereAlgebra<F>,
        psi_variant: PsiVariant,
        h_slopes: HBlockSlopes,
    ) -> Result<Self, AlgebraError> {
        let f = &field;
        // omega^{stuv}_{il} = sum_{a,b,c} Rlm^{tu}_{bc} Rm^{sb}_{ia} Rc^{cv}_{al},
        // right-sum weight on a per the resolved convention (slope 0).
        let rm_w = weighted_lower_last(f, &fam.rm, conv.sum_r_slope);
        let omega = einsum(f, "tubc,sbia,cval->stuvil", &[&fam.rlm, &rm_w, &fam.rc])
            .map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
        // psi^{sv}_{ijkl}: the Rr-Rm-Rc sandwich in the selected reading
        let psi = match psi_variant {
            PsiVariant::Sandwich => {
                einsum(f, "abjk,scia,cvbl->svijkl", &[&fam.rr, &fam.rm, &fam.rc])
                    .map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?
            }
            PsiVariant::WeightedTrace => {
                // sum_a q^{2a} Rm^{sa}_{ic} Rc^{at}_{dl} Rr^{cd}_{jk}
                let mut rm_w = Tensor::new(fam.rm.shape());
                for (idx, v) in fam.rm.entries() {
                    let a = idx[1] as i64;
                    rm_w.set_entry(f, idx, f.mul(v, &f.q_pow(2 * a)));
                }
                einsum(f, "saic,atdl,cdjk->stijkl", &[&rm_w, &fam.rc, &fam.rr])
                    .map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?
            }
        };
        // a4 tensor: (RCPm RCPc)^{stuv}_{ijkl}
        let a4t = einsum(f, "stuvwxyz,wxyzijkl->stuvijkl", &[&fam.rcpm, &fam.rcpc])
            .map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
        // a8 tensor: sum_b Rr^{st}_{ab} Rrm^{uv}_{bc} Rl^{ad}_{ij} Rlm^{dc}_{kl}
        let rr_w = weighted_lower_last(f, &fam.rr, 0);
        let a8t = einsum(
            f,
            "stab,uvbc,adij,dckl->stuvijkl",
            &[&rr_w, &fam.rrm, &fam.rl, &fam.rlm],
        )
        .map_err(|e| AlgebraError::ConventionUnresolved(e.to_string()))?;
        // The right-sum weight on b: slope 0 means no weighting is needed; a
        // nonzero resolved slope would be applied to the b axis here.
        debug_assert_eq!(conv.sum_r_slope, 0);

        Ok(Engine {
            psi_variant,
            h_slopes,
            rcpm_s: Sect8::new(&fam.rcpm),
            rcpc_s: Sect8::new(&fam.rcpc),
            rcp_s: Sect8::new(&fam.rcp),
            rcpcm_s: Sect8::new(&fam.rcpcm),
            a4_s: Sect8::new(&a4t),
            a8_s: Sect8::new(&a8t),
            omega_s: SectOmega::new(&omega),
            psi_s: SectPsi::new(&psi),
            field,
            n,
            conv,
            fam,
            sphere,
            term_cache: RefCell::new(HashMap::new()),
        })
    }

    /// Lift to the polynomial extension by named unknowns (for the solver).
    pub fn lift(&self, names: Vec<String>) -> Result<Engine<ParamField<F>>, AlgebraError> {
        let pf = ParamField::new(self.field.clone(), names);
        let fam = lift_family(&pf, &self.fam);
        let rules = crate::algebra::sphere::SphereRules {
            sigma: pf.constant(self.sphere.rules.sigma.clone()),
            inv: self.sphere.rules.inv.map_entries(|v| pf.constant(v.clone())),
            konst: self.sphere.rules.konst.map_entries(|v| pf.constant(v.clone())),
            omega: self.sphere.rules.omega.iter().map(|v| pf.constant(v.clone())).collect(),
            provenance: self.sphere.rules.provenance.clone(),
        };
        let sphere = SphereAlgebra::new(pf.clone(), self.n, rules);
        Engine::assemble(pf, self.n, self.conv.clone(), fam, sphere, self.psi_variant, self.h_slopes)
    }

    pub fn embed(&self, w: &Word) -> SphereElem<F::E> {
        self.sphere.embed_word(w)
    }

    fn q(&self, e: i64) -> F::E {
        self.field.q_pow(e)
    }

    /// The shape of ansatz term `t` at (i,j,k,l), coefficient one.
    pub fn term_shape(&self, t: usize, i: u8, j: u8, k: u8, l: u8) -> OneForm<F::E> {
        if let Some(hit) = self.term_cache.borrow().get(&(t, [i, j, k, l])) {
            return hit.clone();
        }
        let form = self.term_shape_uncached(t, i, j, k, l);
        self.term_cache.borrow_mut().insert((t, [i, j, k, l]), form.clone());
        form
    }

    fn xdx(&self, form: &mut OneForm<F::E>, w: &[(u8, u8)], uv: (u8, u8), c: F::E) {
        if self.field.is_zero(&c) {
            return;
        }
        let e = elem_scale(&self.field, &self.embed(&word(w)), &c);
        form.add_dx(&self.sphere, uv, &e);
    }

    fn add_h_word(&self, form: &mut OneForm<F::E>, w: &[(u8, u8)], c: F::E) {
        if self.field.is_zero(&c) {
            return;
        }
        let e = elem_scale(&self.field, &self.embed(&word(w)), &c);
        form.add_h(&self.sphere, &e);
    }

    fn term_shape_uncached(&self, t: usize, i: u8, j: u8, k: u8, l: u8) -> OneForm<F::E> {
        let f = &self.field;
        let n = self.n as u8;
        let dl = self.conv.delta_slope;
        let sl = self.conv.sum_l_slope;
        let mut form = OneForm::zero();
        match TERM_NAMES[t] {
            "a1" => self.xdx(&mut form, &[(i, j)], (k, l), f.one()),
            "a2" => {
                for (u, c) in self.rcpm_s.get([i, j, k, l]) {
                    self.xdx(&mut form, &[(u[0], u[1])], (u[2], u[3]), c.clone());
                }
            }
            "a3" => {
                for (u, c) in self.rcpc_s.get([i, j, k, l]) {
                    self.xdx(&mut form, &[(u[0], u[1])], (u[2], u[3]), c.clone());
                }
            }
            "a4" => {
                for (u, c) in self.a4_s.get([i, j, k, l]) {
                    self.xdx(&mut form, &[(u[0], u[1])], (u[2], u[3]), c.clone());
                }
            }
            "a5" => {
                if j == k {
                    for s in 1..=n {
                        self.xdx(&mut form, &[(i, s)], (s, l), self.q(sl * s as i64));
                    }
                }
            }
            "a6" => {
                if j == k {
                    for (u, c) in self.omega_s.get(i, l) {
                        self.xdx(&mut form, &[(u[0], u[1])], (u[2], u[3]), c.clone());
                    }
                }
            }
            "a7" => {
                for (sv, c) in self.psi_s.get(i, j, k, l) {
                    for tt in 1..=n {
                        self.xdx(
                            &mut form,
                            &[(sv[0], tt)],
                            (tt, sv[1]),
                            f.mul(c, &self.q(sl * tt as i64)),
                        );
                    }
                }
            }
            "a8" => {
                for (u, c) in self.a8_s.get([i, j, k, l]) {
                    self.xdx(&mut form, &[(u[0], u[1])], (u[2], u[3]), c.clone());
                }
            }
            "a9" => {
                if j == k && i == l {
                    self.add_h_word(&mut form, &[], self.q(self.h_slopes.a9 * l as i64));
                }
            }
            "e1" => {
                if i == j {
                    for s in 1..=n {
                        self.xdx(
                            &mut form,
                            &[(k, s)],
                            (s, l),
                            self.q(dl * j as i64 + sl * s as i64),
                        );
                    }
                }
            }
            "e2" => {
                if i == j {
                    for (u, c) in self.omega_s.get(k, l) {
                        self.xdx(
                            &mut form,
                            &[(u[0], u[1])],
                            (u[2], u[3]),
                            f.mul(c, &self.q(dl * j as i64)),
                        );
                    }
                }
            }
            "e3" => {
                if k == l {
                    for s in 1..=n {
                        self.xdx(
                            &mut form,
                            &[(i, s)],
                            (s, j),
                            self.q(dl * k as i64 + sl * s as i64),
                        );
                    }
                }
            }
            "e4" => {
                if k == l {
                    for (u, c) in self.omega_s.get(i, j) {
                        self.xdx(
                            &mut form,
                            &[(u[0], u[1])],
                            (u[2], u[3]),
                            f.mul(c, &self.q(dl * k as i64)),
                        );
                    }
                }
            }
            "f1" => {
                if j == k {
                    self.xdx(&mut form, &[], (i, l), f.one());
                }
            }
            "f2" => {
                for (sv, c) in self.psi_s.get(i, j, k, l) {
                    self.xdx(&mut form, &[], (sv[0], sv[1]), c.clone());
                }
            }
            "f3" => {
                if i == j {
                    self.xdx(&mut form, &[], (k, l), self.q(dl * j as i64));
                }
            }
            "f4" => {
                if k == l {
                    self.xdx(&mut form, &[], (i, j), self.q(dl * k as i64));
                }
            }
            "f5" => {
                if i == j && k == l {
                    self.add_h_word(&mut form, &[], self.q(self.h_slopes.f5 * (j as i64 + k as i64)));
                }
            }
            "b1" => {
                for s in 1..=n {
                    self.xdx(&mut form, &[(i, j), (k, s)], (s, l), self.q(sl * s as i64));
                }
            }
            "b2" => {
                for (u, c) in self.rcpc_s.get([i, j, k, l]) {
                    for w in 1..=n {
                        self.xdx(
                            &mut form,
                            &[(u[0], u[1]), (u[2], w)],
                            (w, u[3]),
                            f.mul(c, &self.q(sl * w as i64)),
                        );
                    }
                }
            }
            "b3" => {
                for (u, c) in self.omega_s.get(k, l) {
                    self.xdx(
                        &mut form,
                        &[(i, j), (u[0], u[1])],
                        (u[2], u[3]),
                        c.clone(),
                    );
                }
            }
            "b4" => {
                for (xyzw, c1) in self.rcpm_s.get([i, j, k, l]) {
                    for (u, c2) in self.omega_s.get(xyzw[2], xyzw[3]) {
                        self.xdx(
                            &mut form,
                            &[(xyzw[0], xyzw[1]), (u[0], u[1])],
                            (u[2], u[3]),
                            f.mul(c1, c2),
                        );
                    }
                }
            }
            "b5" => {
                // delta_jk x_il H; the printed x_ij variant fails the
                // restriction comparison
                if j == k {
                    self.add_h_word(&mut form, &[(i, l)], f.one());
                }
            }
            "b6" => {
                for (sv, c) in self.psi_s.get(i, j, k, l) {
                    self.add_h_word(&mut form, &[(sv[0], sv[1])], c.clone());
                }
            }
            "g1" => {
                if i == j {
                    self.add_h_word(&mut form, &[(k, l)], self.q(self.h_slopes.g1 * j as i64));
                }
            }
            "g2" => {
                if k == l {
                    self.add_h_word(&mut form, &[(i, j)], self.q(self.h_slopes.g2 * k as i64));
                }
            }
            "c" => {
                self.add_h_word(&mut form, &[(i, j), (k, l)], f.one());
            }
            other => unreachable!("unknown term {other}"),
        }
        form
    }

    /// Entries of the RCP-family tensors by lower index, for conditions.
    pub fn rcp_section(&self, which: RcpKind, lower: [u8; 4]) -> &[([u8; 4], F::E)] {
        match which {
            RcpKind::Rcp => self.rcp_s.get(lower),
            RcpKind::Rcpm => self.rcpm_s.get(lower),
            RcpKind::Rcpc => self.rcpc_s.get(lower),
            RcpKind::Rcpcm => self.rcpcm_s.get(lower),
        }
    }

    pub fn omega_section(&self, i: u8, l: u8) -> &[([u8; 4], F::E)] {
        self.omega_s.get(i, l)
    }

    pub fn consts(&self) -> &QConstants<F::E> {
        &self.fam.consts
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RcpKind {
    Rcp,
    Rcpm,
    Rcpc,
    Rcpcm,
}

fn weighted_lower_last<F: Field>(f: &F, t: &Tensor<F::E>, slope: i64) -> Tensor<F::E> {
    if slope == 0 {
        return t.clone();
    }
    let mut out = Tensor::new(t.shape());
    for (idx, v) in t.entries() {
        let a = idx[idx.len() - 1] as i64;
        out.set_entry(f, idx, f.mul(v, &f.q_pow(slope * a)));
    }
    out
}

fn lift_family<F: Field>(pf: &ParamField<F>, fam: &RFamily<F::E>) -> RFamily<ParamPoly<F::E>> {
    let lift = |t: &Tensor<F::E>| t.map_entries(|v| pf.constant(v.clone()));
    RFamily {
        n: fam.n,
        r: lift(&fam.r),
        rm: lift(&fam.rm),
        rc: lift(&fam.rc),
        rl: lift(&fam.rl),
        rr: lift(&fam.rr),
        rcm: lift(&fam.rcm),
        rlm: lift(&fam.rlm),
        rrm: lift(&fam.rrm),
        rcp: lift(&fam.rcp),
        rcpm: lift(&fam.rcpm),
        rcpc: lift(&fam.rcpc),
        rcpcm: lift(&fam.rcpcm),
        consts: QConstants {
            splus: pf.constant(fam.consts.splus.clone()),
            siplus: pf.constant(fam.consts.siplus.clone()),
            siiplus: pf.constant(fam.consts.siiplus.clone()),
            siiiplus: pf.constant(fam.consts.siiiplus.clone()),
            sivplus: pf.constant(fam.consts.sivplus.clone()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField};

    fn engine() -> Engine<SampledField> {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        Engine::new(f, 2).unwrap()
    }

    #[test]
    fn a1_shape_is_x_dx() {
        let eng = engine();
        let form = eng.term_shape(term_index("a1").unwrap(), 1, 2, 2, 1);
        assert_eq!(form.dx.len(), 1);
        let w = form.dx.get(&(2, 1)).unwrap();
        assert_eq!(w, &eng.embed(&word(&[(1, 2)])));
        assert!(form.h.is_empty());
    }

    #[test]
    fn a2_shape_matches_naive_contraction() {
        // brute-force the RCPm contraction for one index tuple
        let eng = engine();
        let (i, j, k, l) = (1u8, 2, 1, 1);
        let form = eng.term_shape(term_index("a2").unwrap(), i, j, k, l);
        let f = &eng.field;
        let mut naive = OneForm::zero();
        for s in 1..=2u8 {
            for t in 1..=2u8 {
                for u in 1..=2u8 {
                    for v in 1..=2u8 {
                        let c = eng.fam.rcpm.get(
                            f,
                            &[s as u32, t as u32, u as u32, v as u32, i as u32, j as u32, k as u32, l as u32],
                        );
                        if f.is_zero(&c) {
                            continue;
                        }
                        let e = elem_scale(f, &eng.embed(&word(&[(s, t)])), &c);
                        naive.add_dx(&eng.sphere, (u, v), &e);
                    }
                }
            }
        }
        assert_eq!(form, naive);
    }

    #[test]
    fn h_terms_live_in_h_component() {
        let eng = engine();
        let form = eng.term_shape(term_index("c").unwrap(), 1, 2, 2, 1);
        assert!(form.dx.is_empty());
        assert!(!form.h.is_empty());
    }
}
