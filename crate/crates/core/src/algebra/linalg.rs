//! Incremental sparse row echelon over an exact field.
//!
//! Rows are sorted sparse vectors. The echelon keeps every stored row fully
//! reduced against all pivots (RREF-style), with the pivot on the smallest
//! column id present; callers encode their preferred pivot priority in the
//! column numbering. Insertion order therefore never changes the final
//! reduced forms, which keeps downstream reports deterministic.

use crate::coeff::Field;
use std::collections::{BTreeMap, BTreeSet};

pub type Col = u64;

/// A sorted sparse row.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseRow<E> {
    pub cols: Vec<(Col, E)>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> SparseRow<E> {
    pub fn new() -> Self {
        SparseRow { cols: Vec::new() }
    }

    pub fn from_unsorted<F: Field<E = E>>(f: &F, mut cols: Vec<(Col, E)>) -> Self {
        cols.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(Col, E)> = Vec::with_capacity(cols.len());
        for (c, v) in cols {
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => {
                    *lv = f.add(lv, &v);
                }
                _ => out.push((c, v)),
            }
        }
        out.retain(|(_, v)| !f.is_zero(v));
        SparseRow { cols: out }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn leading(&self) -> Option<Col> {
        self.cols.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: Col) -> Option<&E> {
        self.cols
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.cols[i].1)
    }

    /// self - coeff * rhs
    pub fn sub_scaled<F: Field<E = E>>(&self, f: &F, coeff: &E, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.cols.len() + rhs.cols.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.cols.len() || b < rhs.cols.len() {
            let take_a = match (self.cols.get(a), rhs.cols.get(b)) {
                (Some((ca, _)), Some((cb, _))) => {
                    if ca == cb {
                        let v = f.sub(&self.cols[a].1, &f.mul(coeff, &rhs.cols[b].1));
                        if !f.is_zero(&v) {
                            out.push((*ca, v));
                        }
                        a += 1;
                        b += 1;
                        continue;
                    }
                    ca < cb
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_a {
                out.push(self.cols[a].clone());
                a += 1;
            } else {
                let (c, v) = &rhs.cols[b];
                let nv = f.neg(&f.mul(coeff, v));
                if !f.is_zero(&nv) {
                    out.push((*c, nv));
                }
                b += 1;
            }
        }
        SparseRow { cols: out }
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> Self {
        SparseRow {
            cols: self.cols.iter().map(|(col, v)| (*col, f.mul(v, c))).collect(),
        }
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Default for SparseRow<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Incremental reduced row echelon.
pub struct Echelon<F: Field> {
    field: F,
    /// pivot column -> normalized row (pivot coefficient one).
    rows: BTreeMap<Col, SparseRow<F::E>>,
    /// column -> pivot columns of stored rows containing it (for targeted
    /// back-elimination).
    occurs: BTreeMap<Col, BTreeSet<Col>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: BTreeMap::new(), occurs: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = Col> + '_ {
        self.rows.keys().copied()
    }

    pub fn row_for_pivot(&self, col: Col) -> Option<&SparseRow<F::E>> {
        self.rows.get(&col)
    }

    /// Fully reduce a row against the stored pivots.
    pub fn reduce(&self, row: &SparseRow<F::E>) -> SparseRow<F::E> {
        let f = &self.field;
        let mut cur = row.clone();
        loop {
            let hit = cur
                .cols
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = hit else { return cur };
            cur = cur.sub_scaled(f, &v, &self.rows[&c]);
        }
    }

    /// Insert a row; returns its pivot column if it is independent.
    pub fn insert(&mut self, row: SparseRow<F::E>) -> Option<Col> {
        let f = self.field.clone();
        let mut row = self.reduce(&row);
        let pivot = row.leading()?;
        let lead = row.cols[0].1.clone();
        let inv = f.inv(&lead).expect("pivot coefficient invertible");
        row = row.scale(&f, &inv);

        // Back-eliminate the new pivot from stored rows.
        if let Some(holders) = self.occurs.remove(&pivot) {
            for hp in holders {
                if let Some(stored) = self.rows.remove(&hp) {
                    let coeff = stored.get(pivot).cloned();
                    let newrow = match coeff {
                        Some(c) => stored.sub_scaled(&f, &c, &row),
                        None => stored,
                    };
                    for (c, _) in newrow.cols.iter().skip(1) {
                        self.occurs.entry(*c).or_default().insert(hp);
                    }
                    // Remove stale occurrence entries lazily: rebuild below.
                    self.rows.insert(hp, newrow);
                }
            }
        }
        for (c, _) in row.cols.iter().skip(1) {
            self.occurs.entry(*c).or_default().insert(pivot);
        }
        self.rows.insert(pivot, row);
        Some(pivot)
    }

    /// True when the row lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseRow<F::E>) -> bool {
        self.reduce(row).is_zero()
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField};

    fn f() -> SampledField {
        SampledField::new(Rat::new(3, 2)).unwrap()
    }

    fn row(f: &SampledField, cols: &[(u64, i64)]) -> SparseRow<Rat> {
        SparseRow::from_unsorted(
            f,
            cols.iter().map(|(c, v)| (*c, Rat::from_int(*v))).collect(),
        )
    }

    #[test]
    fn rank_and_membership() {
        let f = f();
        let mut e = Echelon::new(f.clone());
        assert!(e.insert(row(&f, &[(0, 1), (1, 2)])).is_some());
        assert!(e.insert(row(&f, &[(1, 1), (2, 1)])).is_some());
        // dependent combination
        assert!(e.insert(row(&f, &[(0, 2), (1, 6), (2, 2)])).is_none());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&row(&f, &[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&row(&f, &[(2, 1)])));
    }

    #[test]
    fn insertion_order_invariance() {
        let f = f();
        let rows = vec![
            row(&f, &[(0, 1), (3, 2)]),
            row(&f, &[(1, 5), (3, 1)]),
            row(&f, &[(0, 2), (1, 5), (2, 1)]),
        ];
        let mut e1 = Echelon::new(f.clone());
        let mut e2 = Echelon::new(f.clone());
        for r in &rows {
            e1.insert(r.clone());
        }
        for r in rows.iter().rev() {
            e2.insert(r.clone());
        }
        let probe = row(&f, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(e1.reduce(&probe), e2.reduce(&probe));
    }
}
