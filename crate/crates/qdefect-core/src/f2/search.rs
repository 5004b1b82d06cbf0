//! Exhaustive minimum-weight searches over affine subspaces of GF(2)^n.
//!
//! A [`CosetProblem`] enumerates `base + span(rows)` by walking coefficient
//! vectors in Gray-code order, so each step costs one row XOR plus a
//! popcount. The index range `0..2^rows` can be split into disjoint chunks
//! and searched independently; results merge deterministically because the
//! winner is the smallest `(weight, witness)` pair under the frozen
//! [`BitVector`] ordering, independent of chunk boundaries.

use alloc::vec::Vec;

use super::{BitMatrix, BitVector};
use crate::{Error, Result};

/// Default enumeration budget: 2^28 coset elements.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// An exhaustive search for the minimum-weight element of
/// `base + span(rows)`, with optional restrictions.
pub struct CosetProblem<'a> {
    pub base: &'a BitVector,
    pub rows: &'a BitMatrix,
    /// When set, weight is counted only on these columns.
    pub mask: Option<&'a BitVector>,
    /// Skip candidates whose coefficients on the first `t` rows are all
    /// zero. Used to enumerate a set difference like "dual minus
    /// stabilizer": put logical representatives first and set `t` to their
    /// count.
    pub forbid_zero_prefix: usize,
    /// Skip the all-zero vector itself (for "minimum nonzero weight").
    pub skip_zero_vector: bool,
}

/// A located minimum: the best `(weight, witness)` pair, plus the Gray
/// coefficient word that produced it (row `i` of the problem participates
/// iff bit `i` is set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub weight: usize,
    pub witness: BitVector,
    pub coeffs: u64,
}

impl SearchHit {
    /// Deterministic merge: smaller weight wins, ties broken by the frozen
    /// witness order, then by coefficient word.
    pub fn better(self, other: SearchHit) -> SearchHit {
        match (self.weight, &self.witness, self.coeffs).cmp(&(
            other.weight,
            &other.witness,
            other.coeffs,
        )) {
            core::cmp::Ordering::Greater => other,
            _ => self,
        }
    }
}

pub fn merge_hits(a: Option<SearchHit>, b: Option<SearchHit>) -> Option<SearchHit> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.better(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<'a> CosetProblem<'a> {
    pub fn new(base: &'a BitVector, rows: &'a BitMatrix) -> Self {
        assert_eq!(base.len(), rows.n_cols(), "coset base width mismatch");
        CosetProblem {
            base,
            rows,
            mask: None,
            forbid_zero_prefix: 0,
            skip_zero_vector: false,
        }
    }

    pub fn with_mask(mut self, mask: &'a BitVector) -> Self {
        assert_eq!(mask.len(), self.base.len(), "mask width mismatch");
        self.mask = Some(mask);
        self
    }

    pub fn forbidding_zero_prefix(mut self, t: usize) -> Self {
        assert!(t <= self.rows.n_rows());
        self.forbid_zero_prefix = t;
        self
    }

    pub fn skipping_zero_vector(mut self) -> Self {
        self.skip_zero_vector = true;
        self
    }

    /// Number of coset elements to enumerate, or `BudgetExceeded` if it
    /// does not fit in the budget.
    pub fn size_within(&self, budget: u64) -> Result<u64> {
        let m = self.rows.n_rows() as u32;
        let size = if m >= 64 { None } else { Some(1u64 << m) };
        match size {
            Some(s) if s <= budget => Ok(s),
            _ => Err(Error::BudgetExceeded {
                needed_log2: m,
                budget,
            }),
        }
    }

    /// Scan Gray indices `lo..hi` and return the best admissible hit.
    pub fn run_range(&self, lo: u64, hi: u64) -> Option<SearchHit> {
        if lo >= hi {
            return None;
        }
        let n_rows = self.rows.n_rows();
        let prefix_mask: u64 = if self.forbid_zero_prefix == 0 {
            0
        } else if self.forbid_zero_prefix >= 64 {
            u64::MAX
        } else {
            (1u64 << self.forbid_zero_prefix) - 1
        };

        // State at index lo: coefficients gray(lo).
        let mut coeffs = lo ^ (lo >> 1);
        let mut acc = self.base.clone();
        {
            let mut c = coeffs;
            while c != 0 {
                let b = c.trailing_zeros() as usize;
                acc.xor_assign(self.rows.row(b));
                c &= c - 1;
            }
        }

        let mut best: Option<SearchHit> = None;
        let mut i = lo;
        loop {
            let admissible = (self.forbid_zero_prefix == 0 || coeffs & prefix_mask != 0)
                && !(self.skip_zero_vector && acc.is_zero());
            if admissible {
                let weight = match self.mask {
                    Some(m) => acc.weight_within(m),
                    None => acc.weight(),
                };
                let better = match &best {
                    None => true,
                    Some(b) => {
                        weight < b.weight || (weight == b.weight && acc < b.witness)
                    }
                };
                if better {
                    best = Some(SearchHit {
                        weight,
                        witness: acc.clone(),
                        coeffs,
                    });
                }
            }
            i += 1;
            if i == hi {
                break;
            }
            let flip = i.trailing_zeros() as usize;
            debug_assert!(flip < n_rows);
            acc.xor_assign(self.rows.row(flip));
            coeffs ^= 1u64 << flip;
        }
        best
    }
}

/// Strategy for executing a [`CosetProblem`] over its full index range.
///
/// The core ships the serial strategy; the companion crate adds one that
/// splits the range across threads. Both produce identical results.
pub trait SearchRunner: Sync {
    fn run(&self, problem: &CosetProblem<'_>, size: u64) -> Option<SearchHit>;
}

/// Single-threaded scan of the whole range.
pub struct Serial;

impl SearchRunner for Serial {
    fn run(&self, problem: &CosetProblem<'_>, size: u64) -> Option<SearchHit> {
        problem.run_range(0, size)
    }
}

static SERIAL: Serial = Serial;

/// Execution configuration threaded through every enumeration entry point.
#[derive(Clone, Copy)]
pub struct ExecCfg<'a> {
    pub budget: u64,
    pub runner: &'a dyn SearchRunner,
}

impl Default for ExecCfg<'static> {
    fn default() -> Self {
        ExecCfg {
            budget: DEFAULT_BUDGET,
            runner: &SERIAL,
        }
    }
}

impl<'a> ExecCfg<'a> {
    pub fn serial(budget: u64) -> ExecCfg<'static> {
        ExecCfg {
            budget,
            runner: &SERIAL,
        }
    }

    pub fn run(&self, problem: &CosetProblem<'_>) -> Result<Option<SearchHit>> {
        let size = problem.size_within(self.budget)?;
        Ok(self.runner.run(problem, size))
    }
}

/// Minimum weight over the coset `v0 + rowspace(m)`, including `v0` itself.
pub fn min_weight_in_coset(
    v0: &BitVector,
    m: &BitMatrix,
    cfg: &ExecCfg<'_>,
) -> Result<SearchHit> {
    let problem = CosetProblem::new(v0, m);
    Ok(cfg
        .run(&problem)?
        .expect("coset enumeration always visits v0"))
}

/// Minimum-weight solution of `m * x^T = s`, weight optionally counted on
/// `mask` columns only. Fails with `Inconsistent` if there is no solution.
pub fn min_weight_with_syndrome(
    m: &BitMatrix,
    s: &BitVector,
    mask: Option<&BitVector>,
    cfg: &ExecCfg<'_>,
) -> Result<SearchHit> {
    let x0 = m.solve(s).ok_or(Error::Inconsistent)?;
    let kernel = m.kernel_basis();
    let mut problem = CosetProblem::new(&x0, &kernel);
    if let Some(mk) = mask {
        problem = problem.with_mask(mk);
    }
    Ok(cfg
        .run(&problem)?
        .expect("solution coset is never empty"))
}

/// Minimum nonzero weight in `rowspace(m)`.
pub fn min_nonzero_codeword_weight(m: &BitMatrix, cfg: &ExecCfg<'_>) -> Result<Option<SearchHit>> {
    let zero = BitVector::zeros(m.n_cols());
    let problem = CosetProblem::new(&zero, m).skipping_zero_vector();
    cfg.run(&problem)
}

/// Split `0..size` into `chunks` contiguous ranges covering it exactly.
pub fn split_range(size: u64, chunks: usize) -> Vec<(u64, u64)> {
    let chunks = chunks.max(1) as u64;
    let per = size / chunks;
    let extra = size % chunks;
    let mut out = Vec::new();
    let mut lo = 0u64;
    for c in 0..chunks {
        let len = per + if c < extra { 1 } else { 0 };
        if len == 0 {
            continue;
        }
        out.push((lo, lo + len));
        lo += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::Region;

    /// Oracle: direct (non-Gray) enumeration, recomputing each combination
    /// from scratch.
    fn oracle_min(
        v0: &BitVector,
        m: &BitMatrix,
        mask: Option<&BitVector>,
        forbid_prefix: usize,
        skip_zero: bool,
    ) -> Option<usize> {
        let r = m.n_rows();
        let mut best = None;
        for idx in 0u64..(1 << r) {
            if forbid_prefix > 0 && idx & ((1 << forbid_prefix) - 1) == 0 {
                continue;
            }
            let mut acc = v0.clone();
            for b in 0..r {
                if idx >> b & 1 == 1 {
                    acc.xor_assign(m.row(b));
                }
            }
            if skip_zero && acc.is_zero() {
                continue;
            }
            let w = match mask {
                Some(mk) => acc.weight_within(mk),
                None => acc.weight(),
            };
            best = Some(best.map_or(w, |b: usize| b.min(w)));
        }
        best
    }

    #[test]
    fn gray_matches_oracle() {
        // Deterministic pseudo-random instance.
        let rows = BitMatrix::from_index_rows(
            12,
            &[&[0, 3, 7], &[1, 2], &[4, 5, 6, 7], &[0, 1, 8], &[9, 10, 11], &[2, 9]],
        );
        let v0 = BitVector::from_indices(12, &[0, 5, 11]);
        let cfg = ExecCfg::default();
        let hit = min_weight_in_coset(&v0, &rows, &cfg).unwrap();
        assert_eq!(Some(hit.weight), oracle_min(&v0, &rows, None, 0, false));
        // Witness is genuinely in the coset: witness + v0 in rowspace.
        let mut diff = hit.witness.clone();
        diff.xor_assign(&v0);
        assert!(rows.in_rowspace(&diff).is_some());
    }

    #[test]
    fn masked_and_prefix_variants_match_oracle() {
        let rows = BitMatrix::from_index_rows(
            10,
            &[&[0, 1], &[2, 3, 4], &[5, 6], &[0, 7, 8], &[1, 9]],
        );
        let v0 = BitVector::zeros(10);
        let mask = Region::from_indices([0, 2, 4, 6, 8]).indicator(10);
        let p = CosetProblem::new(&v0, &rows)
            .with_mask(&mask)
            .forbidding_zero_prefix(2);
        let hit = ExecCfg::default().run(&p).unwrap().unwrap();
        assert_eq!(
            Some(hit.weight),
            oracle_min(&v0, &rows, Some(&mask), 2, false)
        );
    }

    #[test]
    fn split_ranges_merge_to_same_hit() {
        let rows = BitMatrix::from_index_rows(
            11,
            &[&[0, 4, 9], &[1, 5], &[2, 6, 10], &[3, 7], &[0, 8], &[1, 2, 3]],
        );
        let v0 = BitVector::from_indices(11, &[10]);
        let p = CosetProblem::new(&v0, &rows);
        let size = p.size_within(DEFAULT_BUDGET).unwrap();
        let serial = p.run_range(0, size);
        for chunks in [2, 3, 5, 7] {
            let merged = split_range(size, chunks)
                .into_iter()
                .map(|(lo, hi)| p.run_range(lo, hi))
                .fold(None, merge_hits);
            assert_eq!(serial, merged, "chunks={chunks}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let rows = BitMatrix::zeros(20, 4);
        let v0 = BitVector::zeros(4);
        let p = CosetProblem::new(&v0, &rows);
        match p.size_within(1 << 10) {
            Err(Error::BudgetExceeded { needed_log2: 20, budget }) => {
                assert_eq!(budget, 1 << 10)
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn nonzero_minimum_skips_zero() {
        // Row space contains 0; min nonzero weight is 1 (rows overlap).
        let rows = BitMatrix::from_index_rows(4, &[&[0, 1], &[1]]);
        let hit = min_nonzero_codeword_weight(&rows, &ExecCfg::default())
            .unwrap()
            .unwrap();
        assert_eq!(hit.weight, 1);
    }
}
