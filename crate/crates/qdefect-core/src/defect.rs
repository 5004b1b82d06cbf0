//! Qubit removal by gauge fixing, promotion of a stabilizer generator to a
//! logical pair (a "defect"), and verifiers for the distance bounds that
//! make such defects useful.
//!
//! Throughout, `A` is the set of removed qubits and `B` its complement;
//! `u0` names the Z-check row being promoted, `Q'` the check matrix with
//! that row dropped.

use alloc::vec::Vec;

use crate::css::{CssCode, Distance};
use crate::f2::search::{min_weight_in_coset, min_weight_with_syndrome, ExecCfg};
use crate::f2::{embed_vec, puncture_vec, BitMatrix, BitVector, Region};
use crate::tanner::{Node, TannerGraph};
use crate::{Error, Result};

/// A code with the qubits of an erasable region removed.
#[derive(Clone, Debug)]
pub struct GaugeFixedCode {
    pub a: Region,
    pub b: Region,
    /// `css(P[B], Q_B)`: X checks punctured, Z checks shortened to `B`.
    /// Encodes as many qubits as the base code.
    pub code: CssCode,
}

/// Remove the qubits in `a`, keeping all encoded qubits: X checks are
/// restricted to the remaining columns, Z checks are replaced by a basis
/// of the Z check space supported outside `a` (the result of measuring the
/// removed qubits in the X basis).
pub fn gauge_fix_remove(code: &CssCode, a: &Region) -> Result<GaugeFixedCode> {
    if let Some(bad) = a.iter().find(|&i| i >= code.n()) {
        return Err(Error::ColumnOutOfRange {
            index: bad,
            len: code.n(),
        });
    }
    if let crate::css::Erasability::Blocked { side, witness } = code.is_erasable(a) {
        return Err(Error::NotErasable { side, witness });
    }
    let b = a.complement(code.n());
    let p_b = code.p().puncture(&b);
    let q_b = code.q().shorten(&b);
    let result = CssCode::new(p_b, q_b)?;
    assert_eq!(
        result.k(),
        code.k(),
        "erasable removal must preserve the logical count"
    );
    Ok(GaugeFixedCode {
        a: a.clone(),
        b,
        code: result,
    })
}

/// Outcome of checking the removal distance window on one region:
/// `d_X - |A| <= d_X' <= d_X` and `d_Z' >= d_Z`.
#[derive(Clone, Debug)]
pub struct RemovalBoundsReport {
    pub a_size: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    pub d_x_removed: Distance,
    pub d_z_removed: Distance,
    pub x_lower_ok: bool,
    pub x_upper_ok: bool,
    pub z_ok: bool,
}

impl RemovalBoundsReport {
    pub fn holds(&self) -> bool {
        self.x_lower_ok && self.x_upper_ok && self.z_ok
    }
}

/// Exhaustively compare the distances of `code` and of the code with `a`
/// removed against the removal window.
pub fn verify_removal_bounds(
    code: &CssCode,
    a: &Region,
    cfg: &ExecCfg<'_>,
) -> Result<RemovalBoundsReport> {
    let gf = gauge_fix_remove(code, a)?;
    let before = code.distances(cfg)?;
    let after = gf.code.distances(cfg)?;
    Ok(RemovalBoundsReport {
        a_size: a.len(),
        k: code.k(),
        d_x: before.d_x,
        d_z: before.d_z,
        d_x_removed: after.d_x,
        d_z_removed: after.d_z,
        x_lower_ok: before.d_x.minus(a.len()) <= after.d_x,
        x_upper_ok: after.d_x <= before.d_x,
        z_ok: after.d_z >= before.d_z,
    })
}

/// Minimum weight over the elements of the coset `u0 + rowspace(q_prime)`
/// supported on `b`, with a minimizing witness (full length, zero off `b`).
///
/// Fails with [`Error::NoSupportedRepresentative`] when the coset has no
/// element supported on `b`, i.e. when `u0` restricted to the removed
/// columns is not spanned by `q_prime` restricted there.
pub fn min_new_z_weight(
    q_prime: &BitMatrix,
    u0: &BitVector,
    b: &Region,
    cfg: &ExecCfg<'_>,
) -> Result<(usize, BitVector)> {
    let n = q_prime.n_cols();
    assert_eq!(u0.len(), n, "u0 width mismatch");
    let a = b.complement(n);
    let coeffs = q_prime
        .puncture(&a)
        .in_rowspace(&puncture_vec(u0, &a))
        .ok_or(Error::NoSupportedRepresentative)?;
    let mut rep = u0.clone();
    rep.xor_assign(&q_prime.left_mul(&coeffs));
    debug_assert!(puncture_vec(&rep, &a).is_zero());
    let on_b = q_prime.shorten(b);
    let hit = min_weight_in_coset(&puncture_vec(&rep, b), &on_b, cfg)?;
    Ok((hit.weight, embed_vec(&hit.witness, b, n)))
}

/// Minimum of `wgt(v[b])` over vectors `v` that anticommute with `u0` and
/// commute with every row of `q_prime`, with a minimizing full-length
/// witness.
///
/// Fails with [`Error::Inconsistent`] when no such vector exists (`u0`
/// lies in the rowspace of `q_prime`).
pub fn min_new_x_weight(
    q_prime: &BitMatrix,
    u0: &BitVector,
    b: &Region,
    cfg: &ExecCfg<'_>,
) -> Result<(usize, BitVector)> {
    let n = q_prime.n_cols();
    assert_eq!(u0.len(), n, "u0 width mismatch");
    let mut stacked = q_prime.clone();
    stacked.push_row(u0.clone());
    let mut syndrome = BitVector::zeros(stacked.n_rows());
    syndrome.set(stacked.n_rows() - 1, true);
    let mask = b.indicator(n);
    let hit = min_weight_with_syndrome(&stacked, &syndrome, Some(&mask), cfg)?;
    Ok((hit.weight, hit.witness))
}

/// Everything measured while promoting one Z check to a logical pair.
#[derive(Clone, Debug)]
pub struct DefectReport {
    pub u0_row: usize,
    /// The promoted generator over the parent's qubits.
    pub u0: BitVector,
    pub a: Region,
    pub b: Region,
    /// Ball radius used to pick `a`, when it came from the Tanner ball.
    pub r1: Option<usize>,
    pub parent_n: usize,
    pub parent_k: usize,
    pub d_x_parent: Distance,
    pub d_z_parent: Distance,
    /// `css(P[B], Q'_B)`: the parent with `a` removed and `u0` dropped.
    pub defect_code: CssCode,
    /// Logical qubits gained: `defect_code.k() - parent_k`.
    pub kappa: usize,
    /// Minimum weight of the promoted Z class over the remaining qubits.
    pub d_z_new: usize,
    /// Minimum remaining weight of the conjugate X class.
    pub d_x_new: usize,
    pub z_witness: BitVector,
    pub x_witness: BitVector,
    /// `min(d_z_parent, d_z_new)` / `min(d_x_parent, d_x_new)`.
    pub d_z_defect: Distance,
    pub d_x_defect: Distance,
    /// Distances of the gauge-fixed code `css(P[B], Q_B)` (with `u0` still
    /// a check), used for the removal window flag.
    pub d_x_removed: Distance,
    pub d_z_removed: Distance,
    /// Removal window `d_X - |A| <= d_X' <= d_X`, `d_Z' >= d_Z` observed.
    pub removal_ok: bool,
}

impl DefectReport {
    /// Worst-case distance of the defect code.
    pub fn d_defect(&self) -> Distance {
        self.d_x_defect.min(self.d_z_defect)
    }
}

/// Promote Z-check `u0_row`, removing the qubits of the Tanner ball of
/// radius `2*r1` around it.
pub fn construct_defect(
    code: &CssCode,
    u0_row: usize,
    r1: usize,
    cfg: &ExecCfg<'_>,
) -> Result<DefectReport> {
    let graph = TannerGraph::new(code.q());
    let ball = graph.ball(Node::Check(u0_row), 2 * r1)?;
    construct_defect_with_region(code, u0_row, &ball.value_region(), Some(r1), cfg)
}

/// Promote Z-check `u0_row` with an explicit removal region `a`.
///
/// Preconditions checked here, each failing with
/// [`Error::ConditionFailed`]:
/// 1. `u0` is linearly independent of the other Z checks (otherwise the
///    promoted operator is a stabilizer and nothing is gained);
/// 2. `a` is erasable in the parent code;
/// 3. the promoted class has a representative avoiding `a` (equivalently
///    `u0[A]` is spanned by the other checks restricted to `A`) — without
///    it the defect is trivial.
pub fn construct_defect_with_region(
    code: &CssCode,
    u0_row: usize,
    a: &Region,
    r1: Option<usize>,
    cfg: &ExecCfg<'_>,
) -> Result<DefectReport> {
    let n = code.n();
    if u0_row >= code.q().n_rows() {
        return Err(Error::RowOutOfRange {
            index: u0_row,
            len: code.q().n_rows(),
        });
    }
    let u0 = code.q().row(u0_row).clone();
    let q_prime = code.q().without_row(u0_row)?;
    if q_prime.in_rowspace(&u0).is_some() {
        return Err(Error::ConditionFailed {
            reason: alloc::format!(
                "check row {u0_row} is a combination of the others; promoting it adds nothing \
                 (reduce the generating set first)"
            ),
        });
    }
    if let crate::css::Erasability::Blocked { side, witness } = code.is_erasable(a) {
        return Err(Error::ConditionFailed {
            reason: alloc::format!(
                "region is not erasable: a {side}-type logical of weight {} lives on it",
                witness.weight()
            ),
        });
    }
    let b = a.complement(n);
    // Representative check before paying for any search: this is the cheap
    // rank form of "the promoted class survives off the removed qubits".
    if q_prime
        .puncture(a)
        .in_rowspace(&puncture_vec(&u0, a))
        .is_none()
    {
        return Err(Error::ConditionFailed {
            reason: alloc::string::String::from(
                "promoted class has no representative off the removed qubits; \
                 the defect would be trivial",
            ),
        });
    }

    let parent_dist = code.distances(cfg)?;
    let gf = gauge_fix_remove(code, a)?;
    let removed_dist = gf.code.distances(cfg)?;

    let p_b = code.p().puncture(&b);
    let q_prime_b = q_prime.shorten(&b);
    let defect_code = CssCode::new(p_b, q_prime_b)?;
    let kappa = defect_code.k() - code.k();
    assert_eq!(kappa, 1, "independent promoted row must add one qubit");

    let (d_z_new, z_witness) = min_new_z_weight(&q_prime, &u0, &b, cfg)?;
    let (d_x_new, x_witness) = min_new_x_weight(&q_prime, &u0, &b, cfg)?;

    let removal_ok = parent_dist.d_x.minus(a.len()) <= removed_dist.d_x
        && removed_dist.d_x <= parent_dist.d_x
        && removed_dist.d_z >= parent_dist.d_z;

    Ok(DefectReport {
        u0_row,
        u0,
        a: a.clone(),
        b,
        r1,
        parent_n: n,
        parent_k: code.k(),
        d_x_parent: parent_dist.d_x,
        d_z_parent: parent_dist.d_z,
        defect_code,
        kappa,
        d_z_new,
        d_x_new,
        z_witness,
        x_witness,
        d_z_defect: parent_dist.d_z.min_with(d_z_new),
        d_x_defect: parent_dist.d_x.min_with(d_x_new),
        d_x_removed: removed_dist.d_x,
        d_z_removed: removed_dist.d_z,
        removal_ok,
    })
}

/// Logical-qubit gain of the defect on region `a` with check `u0_row`
/// promoted, from ranks alone (no searches). 1 when the promoted class
/// survives off `a`, 0 when it collapses.
pub fn defect_kappa(code: &CssCode, u0_row: usize, a: &Region) -> Result<usize> {
    if u0_row >= code.q().n_rows() {
        return Err(Error::RowOutOfRange {
            index: u0_row,
            len: code.q().n_rows(),
        });
    }
    let b = a.complement(code.n());
    let q_prime = code.q().without_row(u0_row)?;
    let k_defect = b.len() - code.p().puncture(&b).rank() - shortened_rank(&q_prime, a);
    Ok(k_defect.saturating_sub(code.k()))
}

/// `rank(M_B) = rank(M) - rank(M[A])` without materializing the shortening.
fn shortened_rank(m: &BitMatrix, a: &Region) -> usize {
    m.rank() - m.puncture(a).rank()
}

/// Result of exhaustively checking the locally-independent-generators
/// bound around one check node.
#[derive(Clone, Debug)]
pub struct LocalBoundReport {
    pub u0_row: usize,
    /// Removed-ball radius (the region is `value nodes within 2*r_hole`).
    pub r_hole: usize,
    /// Independence radius: rows within `2*r_indep` of `u0` are mutually
    /// independent.
    pub r_indep: usize,
    /// Rows removed to make the check set independent, all outside the
    /// radius-`2*r_hole` ball.
    pub dropped_rows: Vec<usize>,
    pub a: Region,
    /// Minimum total weight of a vector whose syndrome is exactly `u0`.
    pub min_weight: usize,
    /// Minimum weight outside `a` over the same vectors.
    pub min_weight_outside: usize,
    pub full_witness: BitVector,
    pub outside_witness: BitVector,
    /// `min_weight >= r_indep`.
    pub full_bound_ok: bool,
    /// `min_weight_outside >= r_indep - r_hole`.
    pub outside_bound_ok: bool,
    pub full_saturated: bool,
    pub outside_saturated: bool,
    /// Both witnesses touch every odd-distance shell up to `2*r_indep - 1`.
    pub odd_shells_hit: bool,
}

impl LocalBoundReport {
    pub fn holds(&self) -> bool {
        self.full_bound_ok && self.outside_bound_ok
    }
}

/// Exhaustively verify the weight bound for the class conjugate to `u0`:
/// any `v` whose syndrome under the reduced check matrix is exactly the
/// `u0` bit has `wgt(v) >= r_indep` and `wgt(v[B]) >= r_indep - r_hole`.
///
/// The check matrix is first reduced to full row rank by dropping
/// dependent rows; dropped rows must sit outside the radius-`2*r_hole`
/// ball around `u0`. By default rows are kept greedily in order of
/// (Tanner distance from `u0`, row index), so removals land as far out as
/// possible; pass `drop_rows` to pin the choice (e.g. to exhibit
/// saturation), and it is validated against the same rules.
pub fn verify_local_distance_bound(
    code: &CssCode,
    u0_row: usize,
    r_hole: usize,
    r_indep: usize,
    drop_rows: Option<&[usize]>,
    cfg: &ExecCfg<'_>,
) -> Result<LocalBoundReport> {
    let q = code.q();
    let graph = TannerGraph::new(q);
    if u0_row >= q.n_rows() {
        return Err(Error::RowOutOfRange {
            index: u0_row,
            len: q.n_rows(),
        });
    }
    if r_indep <= r_hole {
        return Err(Error::InfeasibleSpec(alloc::format!(
            "independence radius {r_indep} must exceed removal radius {r_hole}"
        )));
    }
    // (a) u0 must take part in a linear relation among the rows.
    if q.without_row(u0_row)?.in_rowspace(q.row(u0_row)).is_none() {
        return Err(Error::PreconditionFailed {
            name: "row-relation",
            detail: alloc::format!("row {u0_row} is independent of the remaining rows"),
        });
    }
    // (b) rows within radius 2*r_indep are mutually independent.
    let reached = graph.locally_independent_radius(q, u0_row, r_indep)?;
    if reached < r_indep {
        return Err(Error::PreconditionFailed {
            name: "local-independence",
            detail: alloc::format!(
                "rows within radius {} are dependent (largest independent radius {})",
                2 * r_indep,
                reached
            ),
        });
    }

    let dist = graph.distances_from(Node::Check(u0_row))?;
    let dropped = match drop_rows {
        Some(rows) => validate_drops(q, &dist, rows, r_hole)?,
        None => greedy_drops(q, &dist),
    };
    let kept: Vec<usize> = (0..q.n_rows())
        .filter(|r| !dropped.contains(r))
        .collect();
    let q1 = q.select_rows(&kept);
    let u0_pos = kept
        .binary_search(&u0_row)
        .expect("u0 is never dropped (distance 0)");

    let a = graph.ball(Node::Check(u0_row), 2 * r_hole)?.value_region();
    let b_mask = a.complement(code.n()).indicator(code.n());

    let mut syndrome = BitVector::zeros(q1.n_rows());
    syndrome.set(u0_pos, true);
    let full = min_weight_with_syndrome(&q1, &syndrome, None, cfg)?;
    let outside = min_weight_with_syndrome(&q1, &syndrome, Some(&b_mask), cfg)?;

    let floor_outside = r_indep - r_hole;
    let odd_shells_hit = witness_hits_odd_shells(&dist, &full.witness, r_indep)
        && witness_hits_odd_shells(&dist, &outside.witness, r_indep);
    Ok(LocalBoundReport {
        u0_row,
        r_hole,
        r_indep,
        dropped_rows: dropped,
        a,
        min_weight: full.weight,
        min_weight_outside: outside.weight,
        full_witness: full.witness,
        outside_witness: outside.witness,
        full_bound_ok: full.weight >= r_indep,
        outside_bound_ok: outside.weight >= floor_outside,
        full_saturated: full.weight == r_indep,
        outside_saturated: outside.weight == floor_outside,
        odd_shells_hit,
    })
}

/// Keep rows greedily by (distance from the center, row index); returns
/// the dropped (dependent) rows. Under the local-independence
/// precondition every drop lands outside the independence ball.
fn greedy_drops(q: &BitMatrix, dist: &crate::tanner::DistanceMap) -> Vec<usize> {
    let mut order: Vec<(usize, usize)> = (0..q.n_rows())
        .map(|r| (dist.to_checks[r].unwrap_or(usize::MAX), r))
        .collect();
    order.sort_unstable();
    let mut acc = crate::css::IncrementalBasis::new();
    let mut dropped: Vec<usize> = order
        .iter()
        .filter(|&&(_, r)| !acc.try_add(q.row(r)))
        .map(|&(_, r)| r)
        .collect();
    dropped.sort_unstable();
    dropped
}

fn validate_drops(
    q: &BitMatrix,
    dist: &crate::tanner::DistanceMap,
    rows: &[usize],
    r_hole: usize,
) -> Result<Vec<usize>> {
    let mut dropped: Vec<usize> = rows.to_vec();
    dropped.sort_unstable();
    dropped.dedup();
    for &r in &dropped {
        if r >= q.n_rows() {
            return Err(Error::RowOutOfRange {
                index: r,
                len: q.n_rows(),
            });
        }
        if dist.to_checks[r].map(|d| d <= 2 * r_hole).unwrap_or(false) {
            return Err(Error::PreconditionFailed {
                name: "drop-outside-ball",
                detail: alloc::format!(
                    "dropped row {r} lies inside the radius-{} ball",
                    2 * r_hole
                ),
            });
        }
    }
    let kept: Vec<usize> = (0..q.n_rows())
        .filter(|r| dropped.binary_search(r).is_err())
        .collect();
    if q.select_rows(&kept).rank() != q.rank() {
        return Err(Error::PreconditionFailed {
            name: "drop-rank",
            detail: alloc::string::String::from(
                "dropping these rows loses rank; only dependent rows may go",
            ),
        });
    }
    if kept.len() != q.rank() {
        return Err(Error::PreconditionFailed {
            name: "drop-full-rank",
            detail: alloc::format!(
                "{} rows remain but the rank is {}; the reduced matrix must have full row rank",
                kept.len(),
                q.rank()
            ),
        });
    }
    Ok(dropped)
}

/// True when the witness has a set bit at every odd distance
/// `1, 3, ..., 2*r_indep - 1` from the center.
fn witness_hits_odd_shells(
    dist: &crate::tanner::DistanceMap,
    witness: &BitVector,
    r_indep: usize,
) -> bool {
    let mut seen = alloc::vec![false; r_indep];
    for v in witness.support() {
        if let Some(d) = dist.to_values[v] {
            if d % 2 == 1 && d < 2 * r_indep {
                seen[(d - 1) / 2] = true;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Exact minimum weights of products of `m` distinct rows, `m = 1..=m_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionProfile {
    /// `f_actual[m - 1]` = minimum weight over all `m`-subsets.
    pub f_actual: Vec<usize>,
    /// Strictly increasing over the computed range.
    pub monotone_ok: bool,
    /// Smallest subset size `m >= 2` with `f(m) <= f(m - 1)`, if any.
    pub first_non_increase: Option<usize>,
}

impl ExpansionProfile {
    pub fn at(&self, m: usize) -> usize {
        self.f_actual[m - 1]
    }

    pub fn m_max(&self) -> usize {
        self.f_actual.len()
    }
}

/// Enumerate all row subsets of size up to `m_max` and record the minimum
/// XOR weight per size. Cost is `sum_m C(rows, m)`, guarded by the budget.
pub fn expansion_profile(q: &BitMatrix, m_max: usize, cfg: &ExecCfg<'_>) -> Result<ExpansionProfile> {
    let rows = q.n_rows();
    if m_max == 0 || m_max > rows {
        return Err(Error::InfeasibleSpec(alloc::format!(
            "subset size limit {m_max} outside 1..={rows}"
        )));
    }
    let total = subset_count(rows, m_max);
    if total > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed_log2: 128 - total.leading_zeros(),
            budget: cfg.budget,
        });
    }
    let mut best = alloc::vec![usize::MAX; m_max];
    let mut acc = BitVector::zeros(q.n_cols());
    descend(q, 0, 0, m_max, &mut acc, &mut best);
    let mut first_non_increase = None;
    for m in 2..=m_max {
        if best[m - 1] <= best[m - 2] {
            first_non_increase = Some(m);
            break;
        }
    }
    Ok(ExpansionProfile {
        f_actual: best,
        monotone_ok: first_non_increase.is_none(),
        first_non_increase,
    })
}

fn subset_count(rows: usize, m_max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for m in 1..=m_max {
        c = c.saturating_mul((rows - m + 1) as u128) / m as u128;
        total = total.saturating_add(c);
    }
    total
}

fn descend(
    q: &BitMatrix,
    next: usize,
    depth: usize,
    m_max: usize,
    acc: &mut BitVector,
    best: &mut [usize],
) {
    if depth == m_max {
        return;
    }
    for r in next..q.n_rows() {
        acc.xor_assign(q.row(r));
        let w = acc.weight();
        if w < best[depth] {
            best[depth] = w;
        }
        descend(q, r + 1, depth + 1, m_max, acc, best);
        acc.xor_assign(q.row(r));
    }
}

/// Result of checking the expansion lower bound on the promoted Z class.
#[derive(Clone, Debug)]
pub struct ExpansionBoundReport {
    pub u0_row: usize,
    pub r1: usize,
    pub a: Region,
    pub d_z_new: usize,
    pub f_at_r1: usize,
    pub profile: ExpansionProfile,
    pub bound_ok: bool,
    pub slack: i64,
}

/// Verify that the promoted class weight off the ball is at least the
/// expansion profile value at `r1`.
///
/// Preconditions (each a [`Error::PreconditionFailed`]): the removal ball
/// must be erasable with a surviving representative (as in
/// [`construct_defect_with_region`]), and the expansion profile up to
/// `m_max` must be strictly increasing with `f(2) >= 1`.
pub fn verify_expansion_bound(
    code: &CssCode,
    u0_row: usize,
    r1: usize,
    m_max: usize,
    cfg: &ExecCfg<'_>,
) -> Result<ExpansionBoundReport> {
    if r1 == 0 {
        return Err(Error::InfeasibleSpec(alloc::string::String::from(
            "removal radius must be at least 1 (the profile has no value at 0)",
        )));
    }
    if m_max < r1.max(2) {
        return Err(Error::InfeasibleSpec(alloc::format!(
            "profile range {m_max} too short; need at least max(r1, 2) = {}",
            r1.max(2)
        )));
    }
    let graph = TannerGraph::new(code.q());
    let a = graph.ball(Node::Check(u0_row), 2 * r1)?.value_region();
    let b = a.complement(code.n());
    let u0 = code.q().row(u0_row).clone();
    let q_prime = code.q().without_row(u0_row)?;
    if q_prime.in_rowspace(&u0).is_some() {
        return Err(Error::PreconditionFailed {
            name: "independent-row",
            detail: alloc::format!("check row {u0_row} is a combination of the others"),
        });
    }
    if let crate::css::Erasability::Blocked { side, witness } = code.is_erasable(&a) {
        return Err(Error::PreconditionFailed {
            name: "erasable-region",
            detail: alloc::format!(
                "ball region carries a {side}-type logical of weight {}",
                witness.weight()
            ),
        });
    }
    if q_prime
        .puncture(&a)
        .in_rowspace(&puncture_vec(&u0, &a))
        .is_none()
    {
        return Err(Error::PreconditionFailed {
            name: "erasable-region",
            detail: alloc::string::String::from(
                "promoted class has no representative off the ball",
            ),
        });
    }
    let profile = expansion_profile(code.q(), m_max, cfg)?;
    if !profile.monotone_ok || profile.at(2) < 1 {
        let detail = match profile.first_non_increase {
            Some(m) => alloc::format!(
                "profile stops increasing at m = {m}: f({}) = {}, f({m}) = {}",
                m - 1,
                profile.at(m - 1),
                profile.at(m)
            ),
            None => alloc::format!("f(2) = {} < 1", profile.at(2)),
        };
        return Err(Error::PreconditionFailed {
            name: "expansion",
            detail,
        });
    }
    let (d_z_new, _) = min_new_z_weight(&q_prime, &u0, &b, cfg)?;
    let f_at_r1 = profile.at(r1);
    Ok(ExpansionBoundReport {
        u0_row,
        r1,
        a,
        d_z_new,
        f_at_r1,
        bound_ok: d_z_new >= f_at_r1,
        slack: d_z_new as i64 - f_at_r1 as i64,
        profile,
    })
}
