//! Filtered quotient bases with computable normal forms.
//!
//! The basis for the slice "degree <= k" is built degree by degree. At step d
//! the candidate spanning set is {b.g : b basis word of degree d-1, g
//! generator}; the kernel is spanned by the left-padded relation rows
//! {b'.rho : rho defining relation, deg b' = d - deg rho}, expanded through
//! the established lower tables. Right-padded relation products reduce to
//! zero automatically once lower reductions are built into the tables, so
//! left padding is complete.
//!
//! Pivots are taken at the graded-lexicographically largest word of each row
//! (encoded in the column numbering), which makes the selected basis and the
//! reduction maps deterministic.

use super::linalg::{Col, Echelon, SparseRow};
use super::{AlgElem, AlgebraError, Gen, Word};
use crate::coeff::Field;
use std::collections::BTreeMap;

const LOWER_BASE: Col = 1 << 40;

/// A quotient basis with its reduction table.
pub struct QuotientBasis<F: Field> {
    field: F,
    pub n: u32,
    pub k: u32,
    /// Basis words, unit first, grouped by increasing degree.
    pub words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    /// (basis id, generator) -> coordinates of the product over the basis.
    table: BTreeMap<(usize, Gen), Vec<(usize, F::E)>>,
}

impl<F: Field> QuotientBasis<F> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Dimension of the slice of degree <= d.
    pub fn dim_at(&self, d: u32) -> usize {
        self.words.iter().filter(|w| w.len() <= d as usize).count()
    }

    pub fn basis_id(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Reduce an element to basis coordinates.
    pub fn reduce(&self, e: &AlgElem<F::E>) -> Result<Vec<(usize, F::E)>, AlgebraError> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::E> = BTreeMap::new();
        for (w, c) in &e.terms {
            if w.len() > self.k as usize {
                return Err(AlgebraError::DegreeOverflow { got: w.len(), bound: self.k });
            }
            for (id, v) in self.reduce_word(w) {
                let entry = acc.entry(id).or_insert_with(|| f.zero());
                *entry = f.add(entry, &f.mul(&v, c));
            }
        }
        acc.retain(|_, v| !f.is_zero(v));
        Ok(acc.into_iter().collect())
    }

    fn reduce_word(&self, w: &Word) -> Vec<(usize, F::E)> {
        let f = &self.field;
        let mut coords: Vec<(usize, F::E)> = vec![(0, f.one())];
        for g in w.iter() {
            let mut next: BTreeMap<usize, F::E> = BTreeMap::new();
            for (id, c) in &coords {
                let row = self
                    .table
                    .get(&(*id, *g))
                    .expect("table closed under multiplication below the bound");
                for (id2, v) in row {
                    let entry = next.entry(*id2).or_insert_with(|| f.zero());
                    *entry = f.add(entry, &f.mul(v, c));
                }
            }
            next.retain(|_, v| !f.is_zero(v));
            coords = next.into_iter().collect();
        }
        coords
    }

    /// Canonical normal form: linear, idempotent, kills exactly the ideal
    /// slice.
    pub fn normal_form(&self, e: &AlgElem<F::E>) -> Result<AlgElem<F::E>, AlgebraError> {
        let coords = self.reduce(e)?;
        let mut out = AlgElem::zero();
        for (id, c) in coords {
            out.add_term(&self.field, self.words[id].clone(), c);
        }
        Ok(out)
    }
}

/// Build the quotient basis for degree <= k from the defining relations.
///
/// `max_candidates` guards the per-step problem size; exceeding it returns
/// an error carrying the estimate instead of exhausting memory.
pub fn build_quotient<F: Field>(
    f: &F,
    n: u32,
    k: u32,
    relations: &[AlgElem<F::E>],
    max_candidates: usize,
) -> Result<QuotientBasis<F>, AlgebraError> {
    let gens: Vec<Gen> = (1..=n as u8)
        .flat_map(|i| (1..=n as u8).map(move |j| (i, j)))
        .collect();

    let mut qb = QuotientBasis {
        field: f.clone(),
        n,
        k,
        words: vec![Word::new()],
        index: BTreeMap::new(),
        table: BTreeMap::new(),
    };
    qb.index.insert(Word::new(), 0);

    for d in 1..=k {
        // Candidates: basis words of degree d-1 times each generator,
        // column-numbered so that the graded-lex largest word gets the
        // smallest column id (and so becomes the preferred pivot).
        let level_ids: Vec<usize> = (0..qb.words.len())
            .filter(|&id| qb.words[id].len() == (d - 1) as usize)
            .collect();
        let mut cands: Vec<(usize, Gen)> = Vec::new();
        for &b in &level_ids {
            for g in &gens {
                cands.push((b, *g));
            }
        }
        let cand_word = |qb: &QuotientBasis<F>, (b, g): &(usize, Gen)| -> Word {
            let mut w = qb.words[*b].clone();
            w.push(*g);
            w
        };
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by(|&a, &b| {
            cand_word(&qb, &cands[b]).cmp(&cand_word(&qb, &cands[a]))
        });
        let mut col_of: BTreeMap<(usize, Gen), Col> = BTreeMap::new();
        for (rank, &ci) in order.iter().enumerate() {
            col_of.insert(cands[ci], rank as Col);
        }

        let nrows_est: usize = relations.len() * qb.words.len();
        if cands.len() > max_candidates {
            return Err(AlgebraError::SliceTooLarge { candidates: cands.len(), rows: nrows_est });
        }

        // Multiply basis coordinates by one generator: coordinates over
        // candidate columns (for degree d-1 ids) and lower-basis columns.
        let apply_gen = |qb: &QuotientBasis<F>,
                         coords: &[(usize, F::E)],
                         g: Gen,
                         out: &mut Vec<(Col, F::E)>,
                         scale: &F::E| {
            for (id, c) in coords {
                let v = f.mul(c, scale);
                if qb.words[*id].len() == (d - 1) as usize {
                    out.push((col_of[&(*id, g)], v));
                } else {
                    for (id2, w) in &qb.table[&(*id, g)] {
                        out.push((LOWER_BASE + *id2 as Col, f.mul(&v, w)));
                    }
                }
            }
        };

        let mut ech: Echelon<F> = Echelon::new(f.clone());
        for rho in relations {
            let deg = rho.degree();
            if deg > d as usize || deg == 0 {
                continue;
            }
            let pad = (d as usize - deg) as u32;
            let pad_ids: Vec<usize> = (0..qb.words.len())
                .filter(|&id| qb.words[id].len() == pad as usize)
                .collect();
            for &b in &pad_ids {
                let mut cols: Vec<(Col, F::E)> = Vec::new();
                for (w, c) in &rho.terms {
                    match w.len() {
                        0 => cols.push((LOWER_BASE + b as Col, c.clone())),
                        1 => apply_gen(&qb, &[(b, f.one())], w[0], &mut cols, c),
                        2 => {
                            // reduce the first letter, then extend by the second
                            let mid: Vec<(usize, F::E)> = if qb.words[b].len() + 1 <= (d - 1) as usize {
                                qb.table[&(b, w[0])].clone()
                            } else {
                                // b has degree d-1 and rho degree 2 would
                                // overflow; skipped by the pad arithmetic.
                                unreachable!("pad keeps products within degree d")
                            };
                            apply_gen(&qb, &mid, w[1], &mut cols, c);
                        }
                        _ => unreachable!("defining relations have degree <= 2"),
                    }
                }
                let row = SparseRow::from_unsorted(f, cols);
                ech.insert(row);
            }
        }

        // Pivots are dependent candidates; survivors become basis words.
        let pivot_set: std::collections::BTreeSet<Col> = ech.pivots().collect();
        if pivot_set.iter().any(|c| *c >= LOWER_BASE) {
            return Err(AlgebraError::RankDefect);
        }
        let mut id_of_col: BTreeMap<Col, usize> = BTreeMap::new();
        // Assign ids to surviving candidates in ascending word order.
        let mut survivors: Vec<usize> = (0..cands.len())
            .filter(|ci| !pivot_set.contains(&col_of[&cands[*ci]]))
            .collect();
        survivors.sort_by(|&a, &b| cand_word(&qb, &cands[a]).cmp(&cand_word(&qb, &cands[b])));
        for ci in survivors {
            let wext = cand_word(&qb, &cands[ci]);
            let id = qb.words.len();
            qb.words.push(wext.clone());
            qb.index.insert(wext, id);
            id_of_col.insert(col_of[&cands[ci]], id);
        }
        // Fill the multiplication table for this step.
        let to_coords = |row: &SparseRow<F::E>, id_of_col: &BTreeMap<Col, usize>| {
            row.cols
                .iter()
                .map(|(c, v)| {
                    let id = if *c >= LOWER_BASE {
                        (*c - LOWER_BASE) as usize
                    } else {
                        id_of_col[c]
                    };
                    (id, v.clone())
                })
                .collect::<Vec<_>>()
        };
        for (ci, cand) in cands.iter().enumerate() {
            let col = col_of[&cands[ci]];
            let entry = if let Some(id) = id_of_col.get(&col) {
                vec![(*id, f.one())]
            } else {
                let row = ech.row_for_pivot(col).expect("pivot row stored");
                let tail = SparseRow { cols: row.cols[1..].to_vec() };
                to_coords(&tail, &id_of_col)
                    .into_iter()
                    .map(|(id, v)| (id, f.neg(&v)))
                    .collect()
            };
            qb.table.insert(*cand, entry);
        }
    }
    Ok(qb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cp_relations, word, Convention};
    use crate::coeff::{Rat, SampledField, SymbolicField};
    use crate::rmatrix::build_family;

    fn sampled() -> SampledField {
        SampledField::new(Rat::new(3, 2)).unwrap()
    }

    #[test]
    fn quotient_dims_n2() {
        // degree <= 1: 1 + dim pi(1) = 4; degree <= 2: 1 + 3 + 5 = 9.
        let f = SymbolicField;
        let fam = build_family(&f, 2).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        let qb = build_quotient(&f, 2, 2, &rels, 100_000).unwrap();
        assert_eq!(qb.dim_at(1), 4);
        assert_eq!(qb.dim_at(2), 9);
    }

    #[test]
    fn quotient_dims_n3_sampled() {
        // degree <= 2: 1 + 8 + 27 = 36.
        let f = sampled();
        let fam = build_family(&f, 3).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        let qb = build_quotient(&f, 3, 2, &rels, 100_000).unwrap();
        assert_eq!(qb.dim_at(1), 9);
        assert_eq!(qb.dim_at(2), 36);
    }

    #[test]
    fn trace_relation_normal_form_zero() {
        let f = SymbolicField;
        let fam = build_family(&f, 2).unwrap();
        let conv = Convention::resolved();
        let rels = cp_relations(&f, &fam, &conv);
        let qb = build_quotient(&f, 2, 2, &rels, 100_000).unwrap();
        for rho in &rels {
            assert!(qb.normal_form(rho).unwrap().is_zero());
        }
    }

    #[test]
    fn basis_words_reduce_to_themselves() {
        let f = sampled();
        let fam = build_family(&f, 2).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        let qb = build_quotient(&f, 2, 2, &rels, 100_000).unwrap();
        for (id, w) in qb.words.iter().enumerate() {
            let coords = qb.reduce(&AlgElem::monomial(w.clone(), Rat::one())).unwrap();
            assert_eq!(coords, vec![(id, Rat::one())]);
        }
        // x_11 is a basis word
        assert!(qb.basis_id(&word(&[(1, 1)])).is_some());
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let f = sampled();
        let fam = build_family(&f, 2).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        let qb = build_quotient(&f, 2, 2, &rels, 100_000).unwrap();
        let e = AlgElem::monomial(word(&[(2, 1), (1, 2)]), Rat::new(3, 7));
        let nf = qb.normal_form(&e).unwrap();
        assert_eq!(qb.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn degree_overflow_reported() {
        let f = sampled();
        let fam = build_family(&f, 2).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        let qb = build_quotient(&f, 2, 1, &rels, 100_000).unwrap();
        let e = AlgElem::monomial(word(&[(1, 1), (1, 1)]), Rat::one());
        assert!(matches!(
            qb.normal_form(&e),
            Err(AlgebraError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn size_guard_triggers() {
        let f = sampled();
        let fam = build_family(&f, 3).unwrap();
        let rels = cp_relations(&f, &fam, &Convention::resolved());
        assert!(matches!(
            build_quotient(&f, 3, 2, &rels, 10),
            Err(AlgebraError::SliceTooLarge { .. })
        ));
    }
}
