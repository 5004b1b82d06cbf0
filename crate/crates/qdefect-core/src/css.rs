//! CSS stabilizer codes: construction, logical operators, exact distances,
//! and erasability of qubit regions.

use alloc::vec::Vec;

use crate::error::Side;
use crate::f2::search::{CosetProblem, ExecCfg, SearchHit};
use crate::f2::{embed_vec, BitMatrix, BitVector, Region};
use crate::{Error, Result};

/// A CSS code given by X checks `p` and Z checks `q` with `p * q^T = 0`.
///
/// Neither matrix needs full row rank; ranks are computed once at
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    p: BitMatrix,
    q: BitMatrix,
    rank_p: usize,
    rank_q: usize,
}

/// Minimum weight of a logical class, or `Infinite` when there are no
/// logical qubits (the minimization domain is empty).
///
/// Ordered with `Infinite` above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Minimum, treating `Infinite` as larger than any finite value.
    pub fn min_with(self, w: usize) -> Distance {
        match self {
            Distance::Finite(d) => Distance::Finite(d.min(w)),
            Distance::Infinite => Distance::Finite(w),
        }
    }

    /// Saturating subtraction; `Infinite` absorbs.
    pub fn minus(self, w: usize) -> Distance {
        match self {
            Distance::Finite(d) => Distance::Finite(d.saturating_sub(w)),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl core::fmt::Display for Distance {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

/// Exact code distances with minimizing witnesses (absent when `k = 0`).
#[derive(Clone, Debug)]
pub struct CssDistances {
    pub d_x: Distance,
    pub d_z: Distance,
    pub x_witness: Option<BitVector>,
    pub z_witness: Option<BitVector>,
}

/// Representatives of the logical operator classes, `k` rows per side, with
/// the pairing `x * z^T` normalized to the identity.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    pub x: BitMatrix,
    pub z: BitMatrix,
}

/// Outcome of an erasability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Erasability {
    Erasable,
    /// A logical operator of the given side is supported entirely on the
    /// region; erasing it would destroy that logical qubit.
    Blocked { side: Side, witness: BitVector },
}

impl Erasability {
    pub fn is_erasable(&self) -> bool {
        matches!(self, Erasability::Erasable)
    }
}

impl CssCode {
    /// Validates widths and check orthogonality.
    pub fn new(p: BitMatrix, q: BitMatrix) -> Result<Self> {
        if p.n_cols() != q.n_cols() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "X checks have {} columns, Z checks {}",
                p.n_cols(),
                q.n_cols()
            )));
        }
        for (i, x) in p.rows().iter().enumerate() {
            for (j, z) in q.rows().iter().enumerate() {
                if x.dot(z) {
                    return Err(Error::NotOrthogonal { x_row: i, z_row: j });
                }
            }
        }
        let rank_p = p.rank();
        let rank_q = q.rank();
        Ok(CssCode {
            p,
            q,
            rank_p,
            rank_q,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.p.n_cols()
    }

    /// Number of logical qubits, `n - rank(p) - rank(q)`.
    #[inline]
    pub fn k(&self) -> usize {
        self.n() - self.rank_p - self.rank_q
    }

    #[inline]
    pub fn rank_p(&self) -> usize {
        self.rank_p
    }

    #[inline]
    pub fn rank_q(&self) -> usize {
        self.rank_q
    }

    /// X-type checks (rows act as X operators; they detect Z errors).
    #[inline]
    pub fn p(&self) -> &BitMatrix {
        &self.p
    }

    /// Z-type checks.
    #[inline]
    pub fn q(&self) -> &BitMatrix {
        &self.q
    }

    /// Exact distances by exhaustive coset enumeration.
    ///
    /// `d_x` minimizes over `ker(q) \ rowspace(p)`, `d_z` over
    /// `ker(p) \ rowspace(q)`. Needs `2^(k + rank)` steps per side.
    pub fn distances(&self, cfg: &ExecCfg<'_>) -> Result<CssDistances> {
        if self.k() == 0 {
            return Ok(CssDistances {
                d_x: Distance::Infinite,
                d_z: Distance::Infinite,
                x_witness: None,
                z_witness: None,
            });
        }
        let basis = self.logical_basis();
        let x_hit = side_min(&basis.x, &self.p, cfg)?;
        let z_hit = side_min(&basis.z, &self.q, cfg)?;
        Ok(CssDistances {
            d_x: Distance::Finite(x_hit.weight),
            d_z: Distance::Finite(z_hit.weight),
            x_witness: Some(x_hit.witness),
            z_witness: Some(z_hit.witness),
        })
    }

    /// Logical operator representatives with identity pairing.
    ///
    /// # Panics
    /// Panics if the internal rank bookkeeping is inconsistent (cannot
    /// happen for a validated code).
    pub fn logical_basis(&self) -> LogicalBasis {
        let k = self.k();
        let x = extend_past_stabilizer(&self.p, &self.q.kernel_basis(), k);
        let z = extend_past_stabilizer(&self.q, &self.p.kernel_basis(), k);
        if k == 0 {
            return LogicalBasis { x, z };
        }
        // The pairing of the two quotient bases is nondegenerate; normalize
        // it to the identity by recombining the X rows.
        let g = x.mul_transpose(&z);
        let g_inv = invert(&g);
        let x_rows: Vec<BitVector> = (0..k).map(|i| x.left_mul(g_inv.row(i))).collect();
        let x = BitMatrix::from_rows(x_rows, self.n()).expect("width preserved");
        debug_assert_eq!(x.mul_transpose(&z), BitMatrix::identity(k));
        LogicalBasis { x, z }
    }

    /// Can the qubits in `a` be erased without losing logical information?
    ///
    /// Polynomial test: every dual codeword supported on `a` must be a
    /// stabilizer. On failure the witness is a logical operator living
    /// entirely on `a`.
    pub fn is_erasable(&self, a: &Region) -> Erasability {
        if let Some(witness) = blocked_side(&self.q, &self.p, a, self.n()) {
            return Erasability::Blocked {
                side: Side::X,
                witness,
            };
        }
        if let Some(witness) = blocked_side(&self.p, &self.q, a, self.n()) {
            return Erasability::Blocked {
                side: Side::Z,
                witness,
            };
        }
        Erasability::Erasable
    }

    /// Re-choose every logical representative with support outside `a`.
    ///
    /// Each returned row differs from the plain [`Self::logical_basis`] row
    /// by a stabilizer element. Fails with [`Error::NotErasable`] iff the
    /// region is not erasable.
    pub fn clean_logicals(&self, a: &Region) -> Result<LogicalBasis> {
        let basis = self.logical_basis();
        let x = self.clean_side(&basis.x, &self.p, a, Side::X)?;
        let z = self.clean_side(&basis.z, &self.q, a, Side::Z)?;
        Ok(LogicalBasis { x, z })
    }

    fn clean_side(
        &self,
        logs: &BitMatrix,
        stab: &BitMatrix,
        a: &Region,
        side: Side,
    ) -> Result<BitMatrix> {
        let stab_on_a = stab.puncture(a);
        let mut rows = Vec::with_capacity(logs.n_rows());
        for log in logs.rows() {
            let target = crate::f2::puncture_vec(log, a);
            match stab_on_a.in_rowspace(&target) {
                Some(coeffs) => {
                    let mut cleaned = log.clone();
                    cleaned.xor_assign(&stab.left_mul(&coeffs));
                    debug_assert!(a.iter().all(|i| !cleaned.get(i)));
                    rows.push(cleaned);
                }
                None => {
                    // Cleaning this side fails exactly when the opposite
                    // side has a logical supported on the region.
                    let opposite = match side {
                        Side::X => blocked_side(&self.p, &self.q, a, self.n())
                            .map(|w| (Side::Z, w)),
                        Side::Z => blocked_side(&self.q, &self.p, a, self.n())
                            .map(|w| (Side::X, w)),
                    };
                    let (side, witness) =
                        opposite.expect("uncleanable logical without an on-region witness");
                    return Err(Error::NotErasable { side, witness });
                }
            }
        }
        BitMatrix::from_rows(rows, self.n())
    }
}

/// Minimum weight over `span(logs + stab) \ span(stab)`: logical class
/// representatives of one side.
fn side_min(logs: &BitMatrix, stab: &BitMatrix, cfg: &ExecCfg<'_>) -> Result<SearchHit> {
    let ech = stab.echelon();
    let stab_basis = ech.reduced.select_rows(&(0..ech.rank).collect::<Vec<_>>());
    let rows = logs.stack(&stab_basis);
    let zero = BitVector::zeros(stab.n_cols());
    let problem = CosetProblem::new(&zero, &rows).forbidding_zero_prefix(logs.n_rows());
    Ok(cfg
        .run(&problem)?
        .expect("nonzero logical count guarantees admissible candidates"))
}

/// Witness for "some codeword of `ker(dual_of)` supported on `a` is not in
/// `rowspace(stab)`", embedded back to full length. `None` if no such
/// codeword exists.
fn blocked_side(
    dual_of: &BitMatrix,
    stab: &BitMatrix,
    a: &Region,
    n: usize,
) -> Option<BitVector> {
    let dual = dual_of.kernel_basis();
    let supported = dual.shorten(a);
    for row in supported.rows() {
        let emb = embed_vec(row, a, n);
        if stab.in_rowspace(&emb).is_none() {
            return Some(emb);
        }
    }
    None
}

/// Pick `k` rows of `candidates` that are independent modulo
/// `rowspace(stab)`.
fn extend_past_stabilizer(stab: &BitMatrix, candidates: &BitMatrix, k: usize) -> BitMatrix {
    let mut acc = IncrementalBasis::new();
    for row in stab.rows() {
        acc.try_add(row);
    }
    let mut rows = Vec::with_capacity(k);
    for row in candidates.rows() {
        if rows.len() == k {
            break;
        }
        if acc.try_add(row) {
            rows.push(row.clone());
        }
    }
    assert_eq!(rows.len(), k, "dual space smaller than expected");
    BitMatrix::from_rows(rows, stab.n_cols()).expect("width preserved")
}

/// Inverse of an invertible square GF(2) matrix.
///
/// # Panics
/// Panics if the matrix is singular.
fn invert(m: &BitMatrix) -> BitMatrix {
    let ech = m.echelon();
    assert_eq!(ech.rank, m.n_rows(), "matrix is singular");
    // Full reduction of an invertible matrix yields the identity, so the
    // accumulated transform is the inverse.
    ech.transform
}

/// Incremental rank tracker: stores reduced rows keyed by pivot column.
pub(crate) struct IncrementalBasis {
    pivots: Vec<(usize, BitVector)>,
}

impl IncrementalBasis {
    pub(crate) fn new() -> Self {
        IncrementalBasis { pivots: Vec::new() }
    }

    /// Returns true (and absorbs the row) iff it is independent of
    /// everything added so far.
    pub(crate) fn try_add(&mut self, v: &BitVector) -> bool {
        let mut red = v.clone();
        for (p, row) in &self.pivots {
            if red.get(*p) {
                red.xor_assign(row);
            }
        }
        match red.support().first().copied() {
            Some(p) => {
                self.pivots.push((p, red));
                self.pivots.sort_by_key(|(p, _)| *p);
                true
            }
            None => false,
        }
    }
}
