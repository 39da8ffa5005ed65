//! Sparse multi-index tensors over exact scalars, with named-axis contraction.
//!
//! Indices are 1-based throughout, matching the index ranges 1..N used by all
//! R-matrix formulas. Tensors store only nonzero entries; equality is
//! entry-map equality. Contraction follows an einsum-style plan: each summed
//! label appears exactly twice across the operands, output labels exactly
//! once. Pair order is chosen greedily by the smallest product of stored
//! entry counts, which keeps the 8-index contractions sparse.

use crate::coeff::Field;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use thiserror::Error;

pub type Idx = SmallVec<[u32; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("contraction shape: {0}")]
    ContractionShape(String),
    #[error("axis partition invalid: {0}")]
    AxisPartition(String),
    #[error("index out of bounds")]
    IndexBounds,
}

/// A sparse tensor with explicit axis dimensions. Entries are nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<E> {
    shape: SmallVec<[u32; 8]>,
    entries: BTreeMap<Idx, E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Tensor<E> {
    pub fn new(shape: &[u32]) -> Self {
        Tensor { shape: shape.iter().copied().collect(), entries: BTreeMap::new() }
    }

    pub fn shape(&self) -> &[u32] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Idx, &E)> {
        self.entries.iter()
    }

    pub fn get<F: Field<E = E>>(&self, f: &F, idx: &[u32]) -> E {
        self.entries
            .get(&idx.iter().copied().collect::<Idx>())
            .cloned()
            .unwrap_or_else(|| f.zero())
    }

    fn check_idx(&self, idx: &[u32]) -> Result<(), TensorError> {
        if idx.len() != self.shape.len() {
            return Err(TensorError::IndexBounds);
        }
        for (i, d) in idx.iter().zip(self.shape.iter()) {
            if *i < 1 || i > d {
                return Err(TensorError::IndexBounds);
            }
        }
        Ok(())
    }

    /// Insert (accumulating) a value; zero results are removed so that no
    /// explicit zeros are ever stored.
    pub fn add_entry<F: Field<E = E>>(&mut self, f: &F, idx: &[u32], val: E) {
        self.check_idx(idx).expect("index within shape bounds");
        if f.is_zero(&val) {
            return;
        }
        let key: Idx = idx.iter().copied().collect();
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(val);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &val);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn set_entry<F: Field<E = E>>(&mut self, f: &F, idx: &[u32], val: E) {
        self.check_idx(idx).expect("index within shape bounds");
        let key: Idx = idx.iter().copied().collect();
        if f.is_zero(&val) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val);
        }
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = Tensor::new(&self.shape);
        for (k, v) in &self.entries {
            out.add_entry(f, k, f.mul(v, c));
        }
        out
    }

    pub fn add<F: Field<E = E>>(&self, f: &F, rhs: &Self) -> Self {
        assert_eq!(self.shape, rhs.shape, "shape mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.entries {
            out.add_entry(f, k, v.clone());
        }
        out
    }

    pub fn sub<F: Field<E = E>>(&self, f: &F, rhs: &Self) -> Self {
        self.add(f, &rhs.scale(f, &f.neg(&f.one())))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The Kronecker delta on an n-dimensional axis pair.
    pub fn delta<F: Field<E = E>>(f: &F, n: u32) -> Self {
        let mut t = Tensor::new(&[n, n]);
        for i in 1..=n {
            t.set_entry(f, &[i, i], f.one());
        }
        t
    }

    /// Map entries into another field (used to specialise symbolic tensors
    /// at a sample point).
    pub fn map_entries<E2, M>(&self, mut m: M) -> Tensor<E2>
    where
        E2: Clone + PartialEq + std::fmt::Debug + Send + Sync,
        M: FnMut(&E) -> E2,
    {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|(k, v)| (k.clone(), m(v))).collect(),
        }
    }

    /// Flatten to a 2-axis tensor, row-major over the listed axes.
    pub fn as_matrix(&self, row_axes: &[usize], col_axes: &[usize]) -> Result<Self, TensorError> {
        let r = self.rank();
        let mut seen = vec![false; r];
        for &a in row_axes.iter().chain(col_axes.iter()) {
            if a >= r || seen[a] {
                return Err(TensorError::AxisPartition(format!(
                    "axis {a} out of range or repeated"
                )));
            }
            seen[a] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(TensorError::AxisPartition("axes must cover the tensor".into()));
        }
        let dim_of = |axes: &[usize]| axes.iter().map(|&a| self.shape[a] as u64).product::<u64>();
        let (rd, cd) = (dim_of(row_axes), dim_of(col_axes));
        let flatten = |idx: &Idx, axes: &[usize]| -> u32 {
            let mut acc: u64 = 0;
            for &a in axes {
                acc = acc * self.shape[a] as u64 + (idx[a] as u64 - 1);
            }
            (acc + 1) as u32
        };
        let mut out = Tensor::new(&[rd as u32, cd as u32]);
        for (k, v) in &self.entries {
            let key: Idx = [flatten(k, row_axes), flatten(k, col_axes)].iter().copied().collect();
            out.entries.insert(key, v.clone());
        }
        Ok(out)
    }

    /// Inverse of [`Tensor::as_matrix`] for the same axis partition.
    pub fn from_matrix(
        mat: &Self,
        shape: &[u32],
        row_axes: &[usize],
        col_axes: &[usize],
    ) -> Result<Self, TensorError> {
        let unflatten = |mut flat: u64, axes: &[usize], out: &mut Idx| {
            for &a in axes.iter().rev() {
                let d = shape[a] as u64;
                out[a] = (flat % d) as u32 + 1;
                flat /= d;
            }
        };
        let mut out = Tensor::new(shape);
        for (k, v) in &mat.entries {
            let mut idx: Idx = shape.iter().map(|_| 0u32).collect();
            unflatten(k[0] as u64 - 1, row_axes, &mut idx);
            unflatten(k[1] as u64 - 1, col_axes, &mut idx);
            out.entries.insert(idx, v.clone());
        }
        Ok(out)
    }
}

/// An einsum-style contraction plan over named axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub operands: Vec<Vec<char>>,
    pub output: Vec<char>,
}

impl ContractionPlan {
    /// Parse `"tuab,saic,cbjk->stuijk"`-style specs.
    pub fn parse(spec: &str) -> Result<Self, TensorError> {
        let (lhs, rhs) = spec
            .split_once("->")
            .ok_or_else(|| TensorError::ContractionShape("missing ->".into()))?;
        let operands = lhs.split(',').map(|s| s.trim().chars().collect()).collect();
        let output = rhs.trim().chars().collect();
        Ok(ContractionPlan { operands, output })
    }

    fn validate(&self, shapes: &[&[u32]]) -> Result<BTreeMap<char, u32>, TensorError> {
        if shapes.len() != self.operands.len() {
            return Err(TensorError::ContractionShape("operand count mismatch".into()));
        }
        let mut dims: BTreeMap<char, u32> = BTreeMap::new();
        let mut counts: BTreeMap<char, usize> = BTreeMap::new();
        for (labels, shape) in self.operands.iter().zip(shapes.iter()) {
            if labels.len() != shape.len() {
                return Err(TensorError::ContractionShape(format!(
                    "labels {labels:?} vs rank {}",
                    shape.len()
                )));
            }
            for (l, d) in labels.iter().zip(shape.iter()) {
                if let Some(prev) = dims.insert(*l, *d) {
                    if prev != *d {
                        return Err(TensorError::ContractionShape(format!(
                            "label {l} dimension mismatch"
                        )));
                    }
                }
                *counts.entry(*l).or_insert(0) += 1;
            }
        }
        for l in &self.output {
            match counts.get(l) {
                Some(1) => {}
                _ => {
                    return Err(TensorError::ContractionShape(format!(
                        "output label {l} must appear exactly once in operands"
                    )))
                }
            }
        }
        for (l, c) in &counts {
            let in_out = self.output.contains(l);
            if in_out && *c != 1 {
                return Err(TensorError::ContractionShape(format!(
                    "output label {l} repeated in operands"
                )));
            }
            if !in_out && *c != 2 {
                return Err(TensorError::ContractionShape(format!(
                    "summed label {l} appears {c} times"
                )));
            }
        }
        Ok(dims)
    }
}

/// Contract a sequence of tensors following the plan.
pub fn contract<F: Field>(
    f: &F,
    operands: &[&Tensor<F::E>],
    plan: &ContractionPlan,
) -> Result<Tensor<F::E>, TensorError> {
    let shapes: Vec<&[u32]> = operands.iter().map(|t| t.shape()).collect();
    let dims = plan.validate(&shapes)?;

    // Working set of (labels, tensor).
    let mut work: Vec<(Vec<char>, Tensor<F::E>)> = plan
        .operands
        .iter()
        .cloned()
        .zip(operands.iter().map(|t| (*t).clone()))
        .collect();

    // Trace out labels repeated within a single operand.
    for item in &mut work {
        loop {
            let mut dup: Option<(usize, usize)> = None;
            'outer: for i in 0..item.0.len() {
                for j in i + 1..item.0.len() {
                    if item.0[i] == item.0[j] {
                        dup = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = dup else { break };
            let out_labels: Vec<char> = item
                .0
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, l)| *l)
                .collect();
            let mut out = Tensor::new(&out_labels.iter().map(|l| dims[l]).collect::<Vec<_>>());
            for (idx, v) in item.1.entries() {
                if idx[i] != idx[j] {
                    continue;
                }
                let key: Vec<u32> = idx
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, x)| *x)
                    .collect();
                out.add_entry(f, &key, v.clone());
            }
            *item = (out_labels, out);
        }
    }

    // Greedy pairwise contraction: smallest product of entry counts first.
    while work.len() > 1 {
        let mut best = (0usize, 1usize);
        let mut best_cost = u128::MAX;
        for a in 0..work.len() {
            for b in a + 1..work.len() {
                let cost = work[a].1.num_entries() as u128 * work[b].1.num_entries() as u128;
                if cost < best_cost {
                    best_cost = cost;
                    best = (a, b);
                }
            }
        }
        let (bi, bj) = best;
        let (labels_b, tb) = work.remove(bj);
        let (labels_a, ta) = work.remove(bi);

        // Labels to sum now: present in both a and b and in no other operand
        // and not in the output.
        let elsewhere: Vec<char> = work.iter().flat_map(|(l, _)| l.iter().copied()).collect();
        let summed: Vec<char> = labels_a
            .iter()
            .filter(|l| labels_b.contains(l) && !plan.output.contains(l) && !elsewhere.contains(l))
            .copied()
            .collect();

        let apos: Vec<usize> = summed.iter().map(|l| labels_a.iter().position(|x| x == l).unwrap()).collect();
        let bpos: Vec<usize> = summed.iter().map(|l| labels_b.iter().position(|x| x == l).unwrap()).collect();
        let akeep: Vec<usize> = (0..labels_a.len()).filter(|i| !apos.contains(i)).collect();
        let bkeep: Vec<usize> = (0..labels_b.len()).filter(|i| !bpos.contains(i)).collect();

        let mut out_labels: Vec<char> = akeep.iter().map(|&i| labels_a[i]).collect();
        out_labels.extend(bkeep.iter().map(|&i| labels_b[i]));
        let mut out = Tensor::new(&out_labels.iter().map(|l| dims[l]).collect::<Vec<_>>());

        // Hash-join on the summed index values.
        let mut groups: BTreeMap<Idx, Vec<(&Idx, &F::E)>> = BTreeMap::new();
        for (idx, v) in tb.entries() {
            let key: Idx = bpos.iter().map(|&p| idx[p]).collect();
            groups.entry(key).or_default().push((idx, v));
        }
        for (aidx, av) in ta.entries() {
            let key: Idx = apos.iter().map(|&p| aidx[p]).collect();
            let Some(matches) = groups.get(&key) else { continue };
            for (bidx, bv) in matches {
                let mut key: Idx = akeep.iter().map(|&p| aidx[p]).collect();
                key.extend(bkeep.iter().map(|&p| bidx[p]));
                out.add_entry(f, &key, f.mul(av, bv));
            }
        }
        work.push((out_labels, out));
    }

    let (labels, t) = work.pop().expect("at least one operand");
    // Permute axes into the requested output order.
    if labels == plan.output {
        return Ok(t);
    }
    let perm: Vec<usize> = plan
        .output
        .iter()
        .map(|l| labels.iter().position(|x| x == l).expect("validated"))
        .collect();
    let mut out = Tensor::new(&plan.output.iter().map(|l| dims[l]).collect::<Vec<_>>());
    for (idx, v) in t.entries() {
        let key: Vec<u32> = perm.iter().map(|&p| idx[p]).collect();
        out.add_entry(f, &key, v.clone());
    }
    Ok(out)
}

/// Convenience wrapper: parse the spec and contract.
pub fn einsum<F: Field>(
    f: &F,
    spec: &str,
    operands: &[&Tensor<F::E>],
) -> Result<Tensor<F::E>, TensorError> {
    contract(f, operands, &ContractionPlan::parse(spec)?)
}

// ---- serialization: versioned triplet-list envelope ----

pub const TENSOR_FORMAT_VERSION: u32 = 1;

#[derive(serde::Serialize, serde::Deserialize)]
struct TensorEnvelope<E> {
    version: u32,
    shape: Vec<u32>,
    entries: Vec<(Vec<u32>, E)>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync + serde::Serialize> serde::Serialize
    for Tensor<E>
{
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let env = TensorEnvelope {
            version: TENSOR_FORMAT_VERSION,
            shape: self.shape.to_vec(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.to_vec(), v.clone()))
                .collect(),
        };
        env.serialize(ser)
    }
}

impl<'de, E> serde::Deserialize<'de> for Tensor<E>
where
    E: Clone + PartialEq + std::fmt::Debug + Send + Sync + serde::Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let env = TensorEnvelope::<E>::deserialize(de)?;
        if env.version != TENSOR_FORMAT_VERSION {
            return Err(serde::de::Error::custom(format!(
                "tensor format version {} unsupported",
                env.version
            )));
        }
        Ok(Tensor {
            shape: env.shape.into_iter().collect(),
            entries: env
                .entries
                .into_iter()
                .map(|(k, v)| (k.into_iter().collect(), v))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Rat, SampledField};

    fn f() -> SampledField {
        SampledField::new(Rat::new(3, 2)).unwrap()
    }

    #[test]
    fn identity_contraction() {
        let f = f();
        let d = Tensor::delta(&f, 3);
        let mut t = Tensor::new(&[3, 3]);
        t.set_entry(&f, &[1, 2], Rat::new(5, 7));
        t.set_entry(&f, &[3, 3], Rat::from_int(2));
        let r = einsum(&f, "ia,ab->ib", &[&d, &t]).unwrap();
        assert_eq!(r, t);
    }

    #[test]
    fn delta_tensor_as_matrix_is_identity() {
        let f = f();
        let d = Tensor::delta(&f, 2);
        let dd = einsum(&f, "ik,jl->ijkl", &[&d, &d]).unwrap();
        let m = dd.as_matrix(&[0, 1], &[2, 3]).unwrap();
        let expect = Tensor::delta(&f, 4);
        assert_eq!(m, expect);
    }

    #[test]
    fn as_matrix_round_trip() {
        let f = f();
        let mut t = Tensor::new(&[2, 3, 2]);
        t.set_entry(&f, &[1, 3, 2], Rat::new(1, 3));
        t.set_entry(&f, &[2, 1, 1], Rat::from_int(4));
        let m = t.as_matrix(&[0, 2], &[1]).unwrap();
        let back = Tensor::from_matrix(&m, &[2, 3, 2], &[0, 2], &[1]).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn self_trace() {
        let f = f();
        let mut t = Tensor::new(&[2, 2, 2]);
        t.set_entry(&f, &[1, 1, 2], Rat::from_int(3));
        t.set_entry(&f, &[1, 2, 2], Rat::from_int(5));
        t.set_entry(&f, &[2, 2, 1], Rat::from_int(7));
        // sum over repeated first two axes
        let r = einsum(&f, "aak->k", &[&t]).unwrap();
        assert_eq!(r.get(&f, &[2]), Rat::from_int(3));
        assert_eq!(r.get(&f, &[1]), Rat::from_int(7));
    }

    #[test]
    fn no_explicit_zeros_after_ops() {
        let f = f();
        let mut a = Tensor::new(&[2, 2]);
        a.set_entry(&f, &[1, 1], Rat::from_int(1));
        let b = a.scale(&f, &Rat::from_int(-1));
        let s = a.add(&f, &b);
        assert_eq!(s.num_entries(), 0);
    }

    #[test]
    fn label_mismatch_errors() {
        let f = f();
        let a = Tensor::<Rat>::delta(&f, 2);
        let b = Tensor::<Rat>::delta(&f, 3);
        assert!(matches!(
            einsum(&f, "ab,bc->ac", &[&a, &b]),
            Err(TensorError::ContractionShape(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let f = f();
        let mut t = Tensor::new(&[2, 2]);
        t.set_entry(&f, &[1, 2], Rat::new(3, 4));
        let s = serde_json::to_string(&t).unwrap();
        let back: Tensor<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
