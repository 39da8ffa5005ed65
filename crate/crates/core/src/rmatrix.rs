//! The R-matrix of SU_q(N), its derived matrix family and q-constants.
//!
//! Entry table of the fundamental R-matrix (1 <= i,j,k,l <= N):
//!
//! ```text
//! R^{ij}_{kl} = 1          for i = l != k = j,
//!               q          for i = j = k = l,
//!               q - q^-1   for i = k < j = l,
//!               0          otherwise,
//! ```
//!
//! with inverse Rm = R - (q - q^-1) I. The derived matrices are index
//! permutations with q-power prefactors:
//!
//! ```text
//! Rc^{ij}_{kl} = R^{lk}_{ji}       Rl^{ij}_{kl} = q^{2l-2i} R^{jl}_{ik}
//! Rr^{ij}_{kl} = R^{ki}_{lj}
//! ```
//!
//! (and the same built from Rm for Rcm, Rlm, Rrm), plus the four 8-index
//! contractions RCP, RCPm, RCPc, RCPcm used by the quadratic relations of
//! CP_q^{N-1}. Axis order of 4-index tensors is [i, j, k, l] (upper pair
//! first); 8-index tensors are [s, t, u, v, i, j, k, l].

use crate::coeff::Field;
use crate::report::{IdentityCheck, IdentityReport};
use crate::tensor::{einsum, Tensor, TensorError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error("N must be at least 2, got {0}")]
    BadDimension(u32),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// The q-constants s+, si+, sii+, siii+, siv+ for a given N.
///
/// s+ = sum_{i=0}^{N-1} q^{2i}; each following constant subtracts the next
/// even q-power: si+ = s+ - 1, sii+ = si+ - q^2, and so on.
#[derive(Clone, Debug, PartialEq)]
pub struct QConstants<E> {
    pub splus: E,
    pub siplus: E,
    pub siiplus: E,
    pub siiiplus: E,
    pub sivplus: E,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> QConstants<E> {
    pub fn new<F: Field<E = E>>(f: &F, n: u32) -> Self {
        let mut splus = f.zero();
        for i in 0..n {
            splus = f.add(&splus, &f.q_pow(2 * i as i64));
        }
        let siplus = f.sub(&splus, &f.one());
        let siiplus = f.sub(&siplus, &f.q_pow(2));
        let siiiplus = f.sub(&siiplus, &f.q_pow(4));
        let sivplus = f.sub(&siiiplus, &f.q_pow(6));
        QConstants { splus, siplus, siiplus, siiiplus, sivplus }
    }
}

/// The full tensor family for one N.
#[derive(Clone, Debug, PartialEq)]
pub struct RFamily<E> {
    pub n: u32,
    pub r: Tensor<E>,
    pub rm: Tensor<E>,
    pub rc: Tensor<E>,
    pub rl: Tensor<E>,
    pub rr: Tensor<E>,
    pub rcm: Tensor<E>,
    pub rlm: Tensor<E>,
    pub rrm: Tensor<E>,
    pub rcp: Tensor<E>,
    pub rcpm: Tensor<E>,
    pub rcpc: Tensor<E>,
    pub rcpcm: Tensor<E>,
    pub consts: QConstants<E>,
}

/// Build the fundamental R-matrix.
pub fn build_r<F: Field>(f: &F, n: u32) -> Result<Tensor<F::E>, RMatrixError> {
    if n < 2 {
        return Err(RMatrixError::BadDimension(n));
    }
    let mut t = Tensor::new(&[n, n, n, n]);
    let q = f.q_pow(1);
    let qm = f.q_pow(-1);
    let qdiff = f.sub(&q, &qm);
    for i in 1..=n {
        t.set_entry(f, &[i, i, i, i], q.clone());
        for j in 1..=n {
            if i != j {
                // i = l != k = j
                t.set_entry(f, &[i, j, j, i], f.one());
            }
            if i < j {
                // i = k < j = l
                t.set_entry(f, &[i, j, i, j], qdiff.clone());
            }
        }
    }
    Ok(t)
}

fn permuted<F: Field>(
    f: &F,
    src: &Tensor<F::E>,
    n: u32,
    // maps destination index [i,j,k,l] to the source index to look up,
    // plus a q-power prefactor exponent linear in the destination indices
    perm: impl Fn(u32, u32, u32, u32) -> [u32; 4],
    prefactor_exp: impl Fn(u32, u32, u32, u32) -> i64,
) -> Tensor<F::E> {
    // Iterate source entries and scatter into the destination.
    let mut inv: Vec<(smallvec::SmallVec<[u32; 8]>, F::E)> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let s = perm(i, j, k, l);
                    let v = src.get(f, &s);
                    if f.is_zero(&v) {
                        continue;
                    }
                    let e = prefactor_exp(i, j, k, l);
                    let val = if e == 0 { v } else { f.mul(&v, &f.q_pow(e)) };
                    inv.push(([i, j, k, l].iter().copied().collect(), val));
                }
            }
        }
    }
    let mut out = Tensor::new(&[n, n, n, n]);
    for (idx, v) in inv {
        out.set_entry(f, &idx, v);
    }
    out
}

/// Build the complete family for one N.
pub fn build_family<F: Field>(f: &F, n: u32) -> Result<RFamily<F::E>, RMatrixError> {
    let r = build_r(f, n)?;
    // Rm = R - (q - q^-1) I, the inverse of R.
    let qdiff = f.sub(&f.q_pow(1), &f.q_pow(-1));
    let d = Tensor::delta(f, n);
    let id4 = einsum(f, "ik,jl->ijkl", &[&d, &d])?;
    let rm = r.sub(f, &id4.scale(f, &qdiff));

    let rc = permuted(f, &r, n, |i, j, k, l| [l, k, j, i], |_, _, _, _| 0);
    let rcm = permuted(f, &rm, n, |i, j, k, l| [l, k, j, i], |_, _, _, _| 0);
    let rl = permuted(f, &r, n, |i, j, k, l| [j, l, i, k], |i, _, _, l| {
        2 * l as i64 - 2 * i as i64
    });
    let rlm = permuted(f, &rm, n, |i, j, k, l| [j, l, i, k], |i, _, _, l| {
        2 * l as i64 - 2 * i as i64
    });
    let rr = permuted(f, &r, n, |i, j, k, l| [k, i, l, j], |_, _, _, _| 0);
    let rrm = permuted(f, &rm, n, |i, j, k, l| [k, i, l, j], |_, _, _, _| 0);

    // RCP^{stuv}_{ijkl} = Rlm^{tu}_{ab} R^{sa}_{ic} Rr^{cb}_{jk} delta_{vl}
    let rcp = einsum(f, "tuab,saic,cbjk,vl->stuvijkl", &[&rlm, &r, &rr, &d])?;
    let rcpm = einsum(f, "tuab,saic,cbjk,vl->stuvijkl", &[&rlm, &rm, &rr, &d])?;
    // RCPc^{stuv}_{ijkl} = Rlm^{tu}_{ab} Rc^{bv}_{cl} Rr^{ac}_{jk} delta_{si}
    let rcpc = einsum(f, "tuab,bvcl,acjk,si->stuvijkl", &[&rlm, &rc, &rr, &d])?;
    let rcpcm = einsum(f, "tuab,bvcl,acjk,si->stuvijkl", &[&rlm, &rcm, &rr, &d])?;

    Ok(RFamily {
        n,
        r,
        rm,
        rc,
        rl,
        rr,
        rcm,
        rlm,
        rrm,
        rcp,
        rcpm,
        rcpc,
        rcpcm,
        consts: QConstants::new(f, n),
    })
}

// ---- identity suite ----

fn matmul4<F: Field>(f: &F, a: &Tensor<F::E>, b: &Tensor<F::E>) -> Tensor<F::E> {
    einsum(f, "ijab,abkl->ijkl", &[a, b]).expect("shape checked")
}

fn id4<F: Field>(f: &F, n: u32) -> Tensor<F::E> {
    let d = Tensor::delta(f, n);
    einsum(f, "ik,jl->ijkl", &[&d, &d]).expect("shape checked")
}

/// R . Rm = I on the N^2-dimensional space (both orders).
pub fn check_inverse<F: Field>(f: &F, fam: &RFamily<F::E>) -> bool {
    let i4 = id4(f, fam.n);
    matmul4(f, &fam.r, &fam.rm) == i4 && matmul4(f, &fam.rm, &fam.r) == i4
}

/// Hecke relation (R - q)(R + q^-1) = 0.
pub fn check_hecke<F: Field>(f: &F, fam: &RFamily<F::E>) -> bool {
    let i4 = id4(f, fam.n);
    let a = fam.r.sub(f, &i4.scale(f, &f.q_pow(1)));
    let b = fam.r.add(f, &i4.scale(f, &f.q_pow(-1)));
    matmul4(f, &a, &b).is_zero()
}

/// Braid relation R12 R23 R12 = R23 R12 R23 on the N^3-dimensional space.
pub fn check_braid<F: Field>(f: &F, fam: &RFamily<F::E>) -> bool {
    let d = Tensor::delta(f, fam.n);
    let r12 = einsum(f, "ijlm,kn->ijklmn", &[&fam.r, &d]).unwrap();
    let r23 = einsum(f, "jkmn,il->ijklmn", &[&fam.r, &d]).unwrap();
    let prod = |a: &Tensor<F::E>, b: &Tensor<F::E>| {
        einsum(f, "ijkabc,abclmn->ijklmn", &[a, b]).unwrap()
    };
    prod(&prod(&r12, &r23), &r12) == prod(&prod(&r23, &r12), &r23)
}

/// Run the identity suite, one machine-readable entry per identity.
pub fn check_identities<F: Field>(f: &F, fam: &RFamily<F::E>, mode: &str) -> IdentityReport {
    let checks = vec![
        IdentityCheck {
            identity: "inverse".into(),
            n: fam.n,
            mode: mode.into(),
            pass: check_inverse(f, fam),
        },
        IdentityCheck {
            identity: "hecke".into(),
            n: fam.n,
            mode: mode.into(),
            pass: check_hecke(f, fam),
        },
        IdentityCheck {
            identity: "braid".into(),
            n: fam.n,
            mode: mode.into(),
            pass: check_braid(f, fam),
        },
    ];
    IdentityReport { n: fam.n, mode: mode.into(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QScalar, Rat, SampledField, SymbolicField};

    #[test]
    fn r_entries_n2() {
        let f = SymbolicField;
        let r = build_r(&f, 2).unwrap();
        let q = QScalar::q();
        let qdiff = QScalar::q().sub(&QScalar::q_pow(-1));
        assert_eq!(r.num_entries(), 5);
        assert_eq!(r.get(&f, &[1, 1, 1, 1]), q);
        assert_eq!(r.get(&f, &[2, 2, 2, 2]), q);
        assert_eq!(r.get(&f, &[1, 2, 2, 1]), QScalar::one());
        assert_eq!(r.get(&f, &[2, 1, 1, 2]), QScalar::one());
        assert_eq!(r.get(&f, &[1, 2, 1, 2]), qdiff);
    }

    #[test]
    fn r_entry_n3_13() {
        let f = SymbolicField;
        let r = build_r(&f, 3).unwrap();
        assert_eq!(
            r.get(&f, &[1, 3, 1, 3]),
            QScalar::q().sub(&QScalar::q_pow(-1))
        );
    }

    #[test]
    fn nonzero_count_formula() {
        // N diagonal q entries, N(N-1) swap ones, N(N-1)/2 extras.
        let f = SymbolicField;
        for n in 2..=6u32 {
            let r = build_r(&f, n).unwrap();
            let expect = n + n * (n - 1) + n * (n - 1) / 2;
            assert_eq!(r.num_entries() as u32, expect);
        }
    }

    #[test]
    fn n_below_two_rejected() {
        assert!(build_r(&SymbolicField, 1).is_err());
    }

    #[test]
    fn rc_diagonal_entry() {
        let f = SymbolicField;
        for n in [2u32, 4] {
            let fam = build_family(&f, n).unwrap();
            assert_eq!(fam.rc.get(&f, &[1, 1, 1, 1]), QScalar::q());
        }
    }

    #[test]
    fn rl_prefactor_against_direct_lookup() {
        // Rl^{ij}_{kl} = q^{2l-2i} R^{jl}_{ik}, checked entrywise at N=2.
        let f = SymbolicField;
        let fam = build_family(&f, 2).unwrap();
        for i in 1..=2u32 {
            for j in 1..=2u32 {
                for k in 1..=2u32 {
                    for l in 1..=2u32 {
                        let expect = fam
                            .r
                            .get(&f, &[j, l, i, k])
                            .mul(&QScalar::q_pow(2 * l as i64 - 2 * i as i64));
                        assert_eq!(fam.rl.get(&f, &[i, j, k, l]), expect, "{i}{j}{k}{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn rcpm_differs_from_rcp_by_middle_factor() {
        // Rebuild RCPm by substituting the middle factor by hand.
        let f = SymbolicField;
        let fam = build_family(&f, 2).unwrap();
        let d = Tensor::delta(&f, 2);
        let rebuilt = einsum(
            &f,
            "tuab,saic,cbjk,vl->stuvijkl",
            &[&fam.rlm, &fam.rm, &fam.rr, &d],
        )
        .unwrap();
        assert_eq!(rebuilt, fam.rcpm);
        assert_ne!(fam.rcp, fam.rcpm);
    }

    #[test]
    fn identities_symbolic_n2() {
        let f = SymbolicField;
        let fam = build_family(&f, 2).unwrap();
        let rep = check_identities(&f, &fam, "symbolic");
        assert!(rep.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn identities_sampled_n3() {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let fam = build_family(&f, 3).unwrap();
        let rep = check_identities(&f, &fam, "sampled");
        assert!(rep.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn perturbed_r_fails_inverse() {
        let f = SampledField::new(Rat::new(3, 2)).unwrap();
        let mut fam = build_family(&f, 2).unwrap();
        let mut r = fam.r.clone();
        r.set_entry(&f, &[1, 1, 1, 1], Rat::from_int(7));
        fam.r = r;
        assert!(!check_inverse(&f, &fam));
    }

    #[test]
    fn qconstants_telescope_and_siplus_nonzero() {
        let f = SymbolicField;
        for n in 2..=6u32 {
            let c = QConstants::new(&f, n);
            assert_eq!(c.siplus, c.splus.sub(&QScalar::one()));
            assert_eq!(c.siiplus, c.siplus.sub(&QScalar::q_pow(2)));
            assert_eq!(c.siiiplus, c.siiplus.sub(&QScalar::q_pow(4)));
            assert_eq!(c.sivplus, c.siiiplus.sub(&QScalar::q_pow(6)));
            assert!(!c.siplus.is_zero());
        }
    }
}
