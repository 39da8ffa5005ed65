//! SU(N) corepresentation bookkeeping: Young frames, irrep dimensions,
//! Littlewood-Richardson tensor products, the pi(k) tower and morphism
//! counting.
//!
//! Since q is not a root of unity the corepresentation theory matches the
//! classical case, so everything here is classical combinatorics: frames are
//! weakly decreasing partitions with at most N rows, full columns of height N
//! are stripped (SU(N) reduction), dimensions come from the Weyl product
//! formula, and tensor products from the Littlewood-Richardson rule.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("frame has more than {n} rows: {rows:?}")]
    TooManyRows { n: u32, rows: Vec<i64> },
    #[error("frame coincidences: morphism counting requires N >= 4, got {0}")]
    FrameCoincidences(u32),
}

/// A Young frame: weakly decreasing nonnegative row lengths. The empty frame
/// is the trivial corepresentation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frame {
    rows: Vec<i64>,
}

impl Frame {
    pub fn new(rows: &[i64]) -> Self {
        let mut rows: Vec<i64> = rows.to_vec();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        assert!(
            rows.windows(2).all(|w| w[0] >= w[1]) && rows.iter().all(|&r| r >= 0),
            "rows must be weakly decreasing and nonnegative: {rows:?}"
        );
        Frame { rows }
    }

    pub fn trivial() -> Self {
        Frame { rows: vec![] }
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn boxes(&self) -> i64 {
        self.rows.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// SU(N) canonical form: strip full columns of height N.
    pub fn canonical(&self, n: u32) -> Result<Frame, RepError> {
        let mut rows = self.rows.clone();
        if rows.len() > n as usize {
            return Err(RepError::TooManyRows { n, rows });
        }
        if rows.len() == n as usize {
            let m = rows[n as usize - 1];
            for r in rows.iter_mut() {
                *r -= m;
            }
        }
        Ok(Frame::new(&rows))
    }

    fn padded(&self, n: u32) -> Vec<i64> {
        let mut v = self.rows.clone();
        v.resize(n as usize, 0);
        v
    }

    /// Weyl dimension: prod_{i<j} (l_i - l_j + j - i) / (j - i).
    pub fn dim(&self, n: u32) -> Result<BigInt, RepError> {
        let f = self.canonical(n)?;
        let l = f.padded(n);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..n as usize {
            for j in i + 1..n as usize {
                num *= BigInt::from(l[i] - l[j] + j as i64 - i as i64);
                den *= BigInt::from(j as i64 - i as i64);
            }
        }
        let (q, r) = num_integer::div_rem(num, den);
        debug_assert!(r.is_zero());
        Ok(q)
    }

    pub fn dim_u64(&self, n: u32) -> Result<u64, RepError> {
        Ok(self.dim(n)?.to_u64().expect("dimension fits u64"))
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A decomposition into irreducibles: frame -> multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Decomp {
    pub mults: BTreeMap<Frame, u64>,
}

impl Decomp {
    pub fn single(f: Frame) -> Self {
        let mut mults = BTreeMap::new();
        mults.insert(f, 1);
        Decomp { mults }
    }

    pub fn add(&mut self, f: Frame, m: u64) {
        if m > 0 {
            *self.mults.entry(f).or_insert(0) += m;
        }
    }

    pub fn extend_scaled(&mut self, other: &Decomp, scale: u64) {
        for (f, m) in &other.mults {
            self.add(f.clone(), m * scale);
        }
    }

    pub fn mult(&self, f: &Frame) -> u64 {
        self.mults.get(f).copied().unwrap_or(0)
    }

    pub fn total_dim(&self, n: u32) -> Result<BigInt, RepError> {
        let mut acc = BigInt::zero();
        for (f, m) in &self.mults {
            acc += f.dim(n)? * BigInt::from(*m);
        }
        Ok(acc)
    }
}

/// Littlewood-Richardson product with SU(N) column reduction.
///
/// Enumerates LR fillings: boxes of label r (the r-th row of `b`) are added
/// as horizontal strips in label order, subject to the partition shape,
/// the at-most-N-rows bound, and the lattice-word criterion
/// (#r in rows <= i) <= (#(r-1) in rows <= i-1).
pub fn lr_tensor(a: &Frame, b: &Frame, n: u32) -> Result<Decomp, RepError> {
    let a = a.canonical(n)?;
    let b = b.canonical(n)?;
    if b.is_trivial() {
        return Ok(Decomp::single(a));
    }
    let nrows = n as usize;
    let base = a.padded(n);
    let labels = b.rows();

    // counts[r][i] = boxes of label r in row i (filled progressively).
    let mut out = Decomp::default();
    let mut shape = base.clone();
    let mut counts: Vec<Vec<i64>> = vec![vec![0; nrows]; labels.len()];

    // Recursive placement of label `r` starting at row `row`, with
    // `remaining` boxes still to place and `prev` the shape before label r.
    fn place(
        r: usize,
        row: usize,
        remaining: i64,
        prev: &[i64],
        shape: &mut Vec<i64>,
        counts: &mut Vec<Vec<i64>>,
        labels: &[i64],
        n: usize,
        out: &mut Decomp,
        nn: u32,
    ) {
        if remaining == 0 {
            if r + 1 == labels.len() {
                let frame = Frame::new(shape);
                let canon = frame.canonical(nn).expect("at most N rows by construction");
                out.add(canon, 1);
            } else {
                let prev_next = shape.clone();
                place(r + 1, r + 1, labels[r + 1], &prev_next, shape, counts, labels, n, out, nn);
            }
            return;
        }
        if row >= n {
            return;
        }
        // Maximum boxes of label r allowed in this row: keep a partition
        // (bounded by the row above, which is final for this label), and no
        // two label-r boxes in one column (bounded by prev row above).
        let above = if row == 0 { i64::MAX } else { shape[row - 1] };
        let strip_cap = if row == 0 { i64::MAX } else { prev[row - 1] };
        let cap = remaining.min(above - shape[row]).min(strip_cap - shape[row]).max(0);
        for c in (0..=cap).rev() {
            // Lattice criterion: #r in rows <= row must not exceed
            // #(r-1) in rows <= row-1.
            if r > 0 {
                let placed: i64 = counts[r][..=row].iter().sum::<i64>() + c;
                let anchor: i64 = counts[r - 1][..row].iter().sum();
                if placed > anchor {
                    continue;
                }
            }
            shape[row] += c;
            counts[r][row] = c;
            place(r, row + 1, remaining - c, prev, shape, counts, labels, n, out, nn);
            shape[row] -= c;
            counts[r][row] = 0;
        }
    }

    let prev = base;
    place(0, 0, labels[0], &prev, &mut shape, &mut counts, labels, nrows, &mut out, n);
    Ok(out)
}

/// The tower pi(k): pi(0) trivial, pi(k) = (2k, k, ..., k) with N-2 middle
/// rows of k, in SU(N)-canonical form.
pub fn pi_frame(n: u32, k: u32) -> Frame {
    if k == 0 {
        return Frame::trivial();
    }
    let mut rows = vec![k as i64; n as usize - 1];
    rows[0] = 2 * k as i64;
    Frame::new(&rows)
}

pub fn pi_tower(n: u32, kmax: u32) -> Vec<Frame> {
    (0..=kmax).map(|k| pi_frame(n, k)).collect()
}

/// The generator corepresentation pi(1) + pi(0) carried by span{x_ij}.
fn gen_rep(n: u32) -> Decomp {
    let mut d = Decomp::single(pi_frame(n, 1));
    d.add(Frame::trivial(), 1);
    d
}

fn tensor_decomp(a: &Decomp, b: &Decomp, n: u32) -> Result<Decomp, RepError> {
    let mut out = Decomp::default();
    for (fa, ma) in &a.mults {
        for (fb, mb) in &b.mults {
            let prod = lr_tensor(fa, fb, n)?;
            out.extend_scaled(&prod, ma * mb);
        }
    }
    Ok(out)
}

/// Morphism bookkeeping for the bimodule ansatz.
///
/// `per_k_common[k]` counts the irreps shared between (pi(1)+pi(0))^{x2} and
/// pi(k) x (pi(1)+pi(0)) in the published counting, which omits the scalar
/// summand for k >= 1 (its morphism space is the one producing the invariant
/// one-form H, tracked by dedicated coefficients). `per_k_common_all` is the
/// unrestricted distinct count; at N = 5 it differs only at k = 1, where the
/// displayed decompositions share six constituents including the scalar.
/// `raw_total` sums multiplicity products over all shared irreps (Schur);
/// the published figure for it is 33 while the displayed decompositions give
/// 34, again one scalar morphism apart. `after_trace_condition` counts
/// against pi(k) x pi(1), the target after the condition sum_i dx_ii = 0,
/// and is the unambiguous ansatz size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCount {
    pub per_k_common: Vec<usize>,
    pub per_k_common_all: Vec<usize>,
    pub raw_total: u64,
    pub after_trace_condition: u64,
}

pub fn morphism_count(n: u32, kmax: u32) -> Result<MorphismCount, RepError> {
    if n < 4 {
        return Err(RepError::FrameCoincidences(n));
    }
    let g = gen_rep(n);
    let source = tensor_decomp(&g, &g, n)?;
    let mut per_k_common = Vec::new();
    let mut per_k_common_all = Vec::new();
    let mut raw_total = 0u64;
    let mut after_trace = 0u64;
    for k in 0..=kmax {
        let pk = Decomp::single(pi_frame(n, k));
        let target_full = tensor_decomp(&pk, &g, n)?;
        let target_traceless = tensor_decomp(&pk, &Decomp::single(pi_frame(n, 1)), n)?;
        let mut common = 0usize;
        let mut common_all = 0usize;
        for (f, ms) in &source.mults {
            let mt = target_full.mult(f);
            if mt > 0 {
                common_all += 1;
                if k == 0 || !f.is_trivial() {
                    common += 1;
                }
                raw_total += ms * mt;
            }
            after_trace += ms * target_traceless.mult(f);
        }
        per_k_common.push(common);
        per_k_common_all.push(common_all);
    }
    Ok(MorphismCount {
        per_k_common,
        per_k_common_all,
        raw_total,
        after_trace_condition: after_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_n5() {
        // adjoint (2,1,1,1) -> 24, pi(2) = (4,2,2,2) -> 200
        assert_eq!(Frame::new(&[2, 1, 1, 1]).dim_u64(5).unwrap(), 24);
        assert_eq!(Frame::new(&[4, 2, 2, 2]).dim_u64(5).unwrap(), 200);
        assert_eq!(Frame::trivial().dim_u64(5).unwrap(), 1);
    }

    #[test]
    fn canonical_strips_full_columns() {
        let f = Frame::new(&[3, 1, 1]).canonical(3).unwrap();
        assert_eq!(f, Frame::new(&[2]));
        assert!(Frame::new(&[1, 1, 1, 1]).canonical(3).is_err());
    }

    #[test]
    fn pi_tower_frames() {
        assert_eq!(pi_frame(5, 1), Frame::new(&[2, 1, 1, 1]));
        assert_eq!(pi_frame(5, 2), Frame::new(&[4, 2, 2, 2]));
        assert_eq!(pi_frame(2, 2), Frame::new(&[4]));
        assert_eq!(pi_frame(3, 2), Frame::new(&[4, 2]));
        assert_eq!(pi_frame(5, 0), Frame::trivial());
    }

    #[test]
    fn adjoint_squared_n5() {
        // 24 x 24 = 1 + 24 + 24 + 75 + 126 + 126' + 200 (dims), total 576.
        let adj = Frame::new(&[2, 1, 1, 1]);
        let d = lr_tensor(&adj, &adj, 5).unwrap();
        let mut dims: Vec<u64> = d
            .mults
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.dim_u64(5).unwrap()).take(*m as usize))
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 24, 24, 75, 126, 126, 200]);
        assert_eq!(d.total_dim(5).unwrap(), num_bigint::BigInt::from(576));
    }

    #[test]
    fn tensor_with_trivial() {
        let f = Frame::new(&[3, 1]);
        let d = lr_tensor(&f, &Frame::trivial(), 4).unwrap();
        assert_eq!(d, Decomp::single(f));
    }

    #[test]
    fn full_column_acts_trivially() {
        // (1,1,...,1) with N rows reduces to the trivial frame, so tensoring
        // acts as the identity.
        let det = Frame::new(&[1, 1, 1, 1]);
        let f = Frame::new(&[2, 1]);
        let d = lr_tensor(&f, &det, 4).unwrap();
        assert_eq!(d, Decomp::single(f));
    }

    #[test]
    fn dim_multiplicative_over_products() {
        for n in [4u32, 5, 6] {
            for (a, b) in [
                (Frame::new(&[2, 1]), Frame::new(&[1, 1])),
                (Frame::new(&[2, 1, 1, 1]), Frame::new(&[2])),
                (Frame::new(&[3]), Frame::new(&[2, 1])),
            ] {
                let d = lr_tensor(&a, &b, n).unwrap();
                assert_eq!(
                    d.total_dim(n).unwrap(),
                    a.dim(n).unwrap() * b.dim(n).unwrap(),
                    "N={n} {a:?} x {b:?}"
                );
            }
        }
    }

    #[test]
    fn per_k_common_n5() {
        let mc = morphism_count(5, 6).unwrap();
        assert_eq!(&mc.per_k_common[..5], &[2, 5, 4, 1, 0]);
        assert!(mc.per_k_common[5] == 0 && mc.per_k_common[6] == 0);
        // The unrestricted count differs only at k = 1, where the scalar
        // constituent is shared as well; the published total 33 is one
        // scalar morphism short of the product bookkeeping.
        assert_eq!(&mc.per_k_common_all[..5], &[2, 6, 4, 1, 0]);
        assert_eq!(mc.raw_total, 34);
    }

    #[test]
    fn ansatz_term_count_is_27() {
        for n in [4u32, 5, 6] {
            let mc = morphism_count(n, 5).unwrap();
            assert_eq!(mc.after_trace_condition, 27, "N={n}");
        }
    }

    #[test]
    fn morphism_count_small_n_rejected() {
        assert!(matches!(morphism_count(3, 4), Err(RepError::FrameCoincidences(3))));
    }

    #[test]
    fn pi_tower_consistent_with_lr_recursion() {
        // pi(k+1) appears inside pi(k) x (pi(1)+pi(0)).
        for n in [4u32, 5] {
            for k in 0..3u32 {
                let pk = Decomp::single(pi_frame(n, k));
                let prod = tensor_decomp(&pk, &gen_rep(n), n).unwrap();
                assert!(prod.mult(&pi_frame(n, k + 1)) > 0, "N={n} k={k}");
            }
        }
    }
}
