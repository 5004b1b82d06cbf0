use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{BitVector, Region};
use crate::{Error, Result};

/// A dense GF(2) matrix stored as a list of bit-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

/// Result of full Gauss-Jordan elimination on a [`BitMatrix`].
///
/// `reduced = transform * original`, with `transform` an invertible
/// `n_rows x n_rows` record of the row operations. Rows `rank..` of
/// `reduced` are zero.
pub struct Echelon {
    pub reduced: BitMatrix,
    pub transform: BitMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` reduced rows, ascending.
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} columns, expected {cols}",
                    r.len()
                )));
            }
        }
        Ok(BitMatrix { rows, cols })
    }

    /// Build from per-row lists of set-column indices.
    pub fn from_index_rows(cols: usize, rows: &[&[usize]]) -> Self {
        BitMatrix {
            rows: rows
                .iter()
                .map(|idx| BitVector::from_indices(cols, idx))
                .collect(),
            cols,
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "pushed row has wrong width");
        self.rows.push(row);
    }

    /// Copy with row `i` removed.
    pub fn without_row(&self, i: usize) -> Result<BitMatrix> {
        if i >= self.rows.len() {
            return Err(Error::RowOutOfRange {
                index: i,
                len: self.rows.len(),
            });
        }
        let mut rows = self.rows.clone();
        rows.remove(i);
        Ok(BitMatrix { rows, cols: self.cols })
    }

    /// Copy keeping only the rows listed in `keep` (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: self.cols,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "stack of different widths");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix { rows, cols: self.cols }
    }

    pub fn column_weight(&self, col: usize) -> usize {
        self.rows.iter().filter(|r| r.get(col)).count()
    }

    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(|r| r.weight()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.support() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `self * other^T` as a `n_rows(self) x n_rows(other)` matrix of
    /// pairwise inner products.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "mul_transpose width mismatch");
        let mut out = BitMatrix::zeros(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.rows[i].set(j, true);
                }
            }
        }
        out
    }

    /// `coeffs * self`: XOR of the rows selected by `coeffs`.
    pub fn left_mul(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.rows.len(), "left_mul length mismatch");
        let mut acc = BitVector::zeros(self.cols);
        for i in coeffs.support() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    /// `self * v^T` as a length-`n_rows` syndrome vector.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Full Gauss-Jordan elimination with row-operation tracking.
    pub fn echelon(&self) -> Echelon {
        let n_rows = self.rows.len();
        let mut reduced = self.clone();
        let mut transform = BitMatrix::identity(n_rows);
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(p) = (next..n_rows).find(|&r| reduced.rows[r].get(col)) else {
                continue;
            };
            reduced.rows.swap(next, p);
            transform.rows.swap(next, p);
            let pivot_row = reduced.rows[next].clone();
            let pivot_t = transform.rows[next].clone();
            for r in 0..n_rows {
                if r != next && reduced.rows[r].get(col) {
                    reduced.rows[r].xor_assign(&pivot_row);
                    transform.rows[r].xor_assign(&pivot_t);
                }
            }
            pivots.push(col);
            next += 1;
            if next == n_rows {
                break;
            }
        }
        Echelon {
            reduced,
            transform,
            rank: next,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination without bookkeeping.
        let mut work = self.rows.clone();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(p) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank].clone();
            for row in work.iter_mut().skip(rank + 1) {
                if row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Basis of `{ x : self * x^T = 0 }`, one row per free column;
    /// `n_cols - rank` rows.
    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = self.echelon();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in ech.pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        let mut rows = Vec::with_capacity(self.cols - ech.rank);
        for f in 0..self.cols {
            if pivot_of_col[f].is_some() {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in ech.pivots.iter().enumerate() {
                if ech.reduced.rows[i].get(f) {
                    v.set(p, true);
                }
            }
            rows.push(v);
        }
        BitMatrix { rows, cols: self.cols }
    }

    /// If `v` is in the row space, return coefficients `c` with
    /// `c * self = v` (length `n_rows`); otherwise `None`.
    pub fn in_rowspace(&self, v: &BitVector) -> Option<BitVector> {
        assert_eq!(v.len(), self.cols, "in_rowspace length mismatch");
        let ech = self.echelon();
        let mut residual = v.clone();
        let mut coeffs = BitVector::zeros(self.rows.len());
        for (i, &p) in ech.pivots.iter().enumerate() {
            if residual.get(p) {
                residual.xor_assign(&ech.reduced.rows[i]);
                coeffs.set(i, true);
            }
        }
        if residual.is_zero() {
            Some(ech.transform.left_mul(&coeffs))
        } else {
            None
        }
    }

    /// Solve `self * x^T = s` for one `x`, if the system is consistent.
    pub fn solve(&self, s: &BitVector) -> Option<BitVector> {
        assert_eq!(s.len(), self.rows.len(), "solve syndrome length mismatch");
        let ech = self.echelon();
        let mut x = BitVector::zeros(self.cols);
        for i in 0..self.rows.len() {
            let si = ech.transform.rows[i].dot(s);
            if i < ech.rank {
                if si {
                    x.set(ech.pivots[i], true);
                }
            } else if si {
                return None;
            }
        }
        Some(x)
    }

    /// Restrict columns to `keep`, preserving rows as they are.
    pub fn puncture(&self, keep: &Region) -> BitMatrix {
        BitMatrix {
            rows: self.rows.iter().map(|r| puncture_vec(r, keep)).collect(),
            cols: keep.len(),
        }
    }

    /// Basis of the shortened code: codewords of the row space supported
    /// entirely on `keep`, restricted to those columns.
    ///
    /// Rows that never touch the dropped columns pass through literally;
    /// rows that do are either consumed as elimination pivots or replaced
    /// by their cleared combination. Dependent leftovers are discarded in
    /// row order, so the result is a basis.
    pub fn shorten(&self, keep: &Region) -> BitMatrix {
        let drop = keep.complement(self.cols);
        let n_rows = self.rows.len();
        let mut work = self.rows.clone();
        let mut consumed = vec![false; n_rows];
        for col in drop.iter() {
            let Some(p) = (0..n_rows).find(|&r| !consumed[r] && work[r].get(col)) else {
                continue;
            };
            consumed[p] = true;
            let pivot = work[p].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if !consumed[r] && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
        }
        let candidates: Vec<BitVector> = (0..n_rows)
            .filter(|&r| !consumed[r])
            .map(|r| puncture_vec(&work[r], keep))
            .collect();
        greedy_independent(candidates, keep.len())
    }
}

/// Restrict a vector to the columns in `keep`.
pub(crate) fn puncture_vec(v: &BitVector, keep: &Region) -> BitVector {
    let mut out = BitVector::zeros(keep.len());
    for (j, i) in keep.iter().enumerate() {
        if v.get(i) {
            out.set(j, true);
        }
    }
    out
}

/// Place the bits of `v` (length `|positions|`) at `positions` within a
/// zero vector of length `n`. Inverse of [`puncture_vec`] on its image.
pub fn embed_vec(v: &BitVector, positions: &Region, n: usize) -> BitVector {
    assert_eq!(v.len(), positions.len(), "embed length mismatch");
    let mut out = BitVector::zeros(n);
    for (j, i) in positions.iter().enumerate() {
        if v.get(j) {
            out.set(i, true);
        }
    }
    out
}

/// Keep a maximal independent subset of `candidates`, scanning in order and
/// keeping each row verbatim when it increases the rank.
fn greedy_independent(candidates: Vec<BitVector>, cols: usize) -> BitMatrix {
    let mut basis: Vec<(usize, BitVector)> = Vec::new(); // (pivot col, reduced row)
    let mut kept = Vec::new();
    for cand in candidates {
        let mut red = cand.clone();
        for (p, row) in &basis {
            if red.get(*p) {
                red.xor_assign(row);
            }
        }
        if let Some(p) = red.support().first().copied() {
            basis.push((p, red));
            basis.sort_by_key(|(p, _)| *p);
            kept.push(cand);
        }
    }
    BitMatrix { rows: kept, cols }
}
