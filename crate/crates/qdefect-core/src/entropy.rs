//! Entanglement entropy of stabilizer states from group decompositions,
//! cut perimeters, the excess `gamma = L - upsilon`, and its stability
//! under region deformations.
//!
//! Group elements are binary rows with `2n` columns: X part in columns
//! `0..n`, Z part in `n..2n`. The Pauli support of a row is the union of
//! both parts' supports.

use alloc::vec::Vec;

use crate::css::CssCode;
use crate::defect::defect_kappa;
use crate::f2::search::ExecCfg;
use crate::f2::{BitMatrix, BitVector, Region};
use crate::{Error, Result};

/// An Abelian group of Pauli operators in binary symplectic form.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    gens: BitMatrix,
    n: usize,
    rank: usize,
}

impl StabilizerGroup {
    /// Validates widths and pairwise commutation.
    pub fn new(gens: BitMatrix, n: usize) -> Result<Self> {
        if gens.n_cols() != 2 * n {
            return Err(Error::ShapeMismatch(alloc::format!(
                "symplectic rows need {} columns, got {}",
                2 * n,
                gens.n_cols()
            )));
        }
        let x_cols = Region::from_indices(0..n);
        let z_cols = Region::from_indices(n..2 * n);
        let xs: Vec<BitVector> = gens
            .rows()
            .iter()
            .map(|r| crate::f2::puncture_vec(r, &x_cols))
            .collect();
        let zs: Vec<BitVector> = gens
            .rows()
            .iter()
            .map(|r| crate::f2::puncture_vec(r, &z_cols))
            .collect();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                if xs[i].dot(&zs[j]) ^ zs[i].dot(&xs[j]) {
                    return Err(Error::NotOrthogonal { x_row: i, z_row: j });
                }
            }
        }
        let rank = gens.rank();
        Ok(StabilizerGroup { gens, n, rank })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn generators(&self) -> &BitMatrix {
        &self.gens
    }

    /// Columns (X and Z) belonging to the qubits of `a`.
    fn pauli_columns(&self, a: &Region) -> Region {
        a.iter().flat_map(|i| [i, self.n + i]).collect()
    }
}

/// Stabilizer state of a code: checks plus one cleaned Z logical per
/// encoded qubit, giving a rank-`n` group (a single state).
///
/// The added logicals avoid the qubits of `a`, so they never contribute to
/// the `A`-side subgroup of any cut inside `a`. Fails with
/// [`Error::NotErasable`] when no such choice exists.
pub fn state_from_code(code: &CssCode, a: &Region) -> Result<StabilizerGroup> {
    let n = code.n();
    let basis = code.clean_logicals(a)?;
    let mut rows = Vec::with_capacity(code.p().n_rows() + code.q().n_rows() + basis.z.n_rows());
    for r in code.p().rows() {
        rows.push(embed_x(r, n));
    }
    for r in code.q().rows() {
        rows.push(embed_z(r, n));
    }
    for r in basis.z.rows() {
        rows.push(embed_z(r, n));
    }
    let group = StabilizerGroup::new(BitMatrix::from_rows(rows, 2 * n)?, n)?;
    assert_eq!(group.rank(), n, "state group must fix a single state");
    Ok(group)
}

fn embed_x(v: &BitVector, n: usize) -> BitVector {
    let mut out = BitVector::zeros(2 * n);
    for i in v.support() {
        out.set(i, true);
    }
    out
}

fn embed_z(v: &BitVector, n: usize) -> BitVector {
    let mut out = BitVector::zeros(2 * n);
    for i in v.support() {
        out.set(n + i, true);
    }
    out
}

/// Ranks of the subgroup supported on `A`, on `B`, and of the genuinely
/// split remainder; `upsilon` counts the entangled pairs across the cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDecomposition {
    pub a: Region,
    pub rank_s: usize,
    pub rank_sa: usize,
    pub rank_sb: usize,
    pub rank_sab: usize,
    pub upsilon: usize,
}

/// Decompose the group across the cut `a` / complement.
///
/// # Panics
/// Panics if the split rank comes out odd, which cannot happen for an
/// Abelian group (it is twice the number of cross-cut pairs).
pub fn decompose_cut(s: &StabilizerGroup, a: &Region) -> CutDecomposition {
    let b = a.complement(s.n_qubits());
    let rank_sa = s.gens.shorten(&s.pauli_columns(a)).n_rows();
    let rank_sb = s.gens.shorten(&s.pauli_columns(&b)).n_rows();
    let rank_sab = s.rank() - rank_sa - rank_sb;
    assert_eq!(rank_sab % 2, 0, "split subgroup rank must be even");
    CutDecomposition {
        a: a.clone(),
        rank_s: s.rank(),
        rank_sa,
        rank_sb,
        rank_sab,
        upsilon: rank_sab / 2,
    }
}

/// Number of rows whose support meets both `a` and its complement.
pub fn perimeter(m: &BitMatrix, a: &Region) -> usize {
    let mask = a.indicator(m.n_cols());
    m.rows()
        .iter()
        .filter(|r| {
            let inside = r.weight_within(&mask);
            inside > 0 && inside < r.weight()
        })
        .count()
}

/// Cut perimeter minus entanglement: `gamma = L - upsilon`, with the
/// perimeter counted on the Z checks (the X-side count is reported
/// alongside). Reported as a signed value — a generator-set-dependent
/// quantity that is not clamped.
#[derive(Clone, Debug)]
pub struct GammaReport {
    pub cut: CutDecomposition,
    pub perimeter_z: usize,
    pub perimeter_x: usize,
    pub gamma: i64,
}

/// Entanglement excess of the cut `a` for the state built from `code`
/// with logicals cleaned off `a`.
pub fn gamma(code: &CssCode, a: &Region) -> Result<GammaReport> {
    let s = state_from_code(code, a)?;
    let cut = decompose_cut(&s, a);
    // Pure state: entanglement is computable from either side.
    assert_eq!(cut.upsilon, a.len() - cut.rank_sa);
    assert_eq!(
        cut.upsilon,
        (code.n() - a.len()) - cut.rank_sb,
        "pure-state cross-check"
    );
    let perimeter_z = perimeter(code.q(), a);
    let perimeter_x = perimeter(code.p(), a);
    Ok(GammaReport {
        gamma: perimeter_z as i64 - cut.upsilon as i64,
        cut,
        perimeter_z,
        perimeter_x,
    })
}

/// The qubit-gain bound: a defect on region `a` can add at most `gamma`
/// logical qubits.
#[derive(Clone, Debug)]
pub struct KappaBoundReport {
    pub kappa: usize,
    pub gamma: i64,
    pub holds: bool,
}

pub fn check_kappa_bound(code: &CssCode, a: &Region, kappa: usize) -> Result<KappaBoundReport> {
    let report = gamma(code, a)?;
    Ok(KappaBoundReport {
        kappa,
        gamma: report.gamma,
        holds: (kappa as i64) <= report.gamma,
    })
}

/// One-qubit change to the removed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Add(usize),
    Remove(usize),
}

/// Per-step record of a deformation trace.
#[derive(Clone, Debug)]
pub struct DeformationStep {
    /// 1-based move count applied so far.
    pub index: usize,
    pub region_size: usize,
    /// Steps with `index + w < d'` carry the stability guarantee.
    pub in_guarantee: bool,
    pub erasable: bool,
    pub kappa: Option<usize>,
    pub gamma: Option<i64>,
    /// `Some` only inside the guarantee: kappa unchanged and
    /// `gamma >= kappa`.
    pub ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct DeformationReport {
    pub d_defect: crate::css::Distance,
    pub w: usize,
    pub kappa_start: usize,
    pub steps: Vec<DeformationStep>,
    pub first_violation: Option<usize>,
}

impl DeformationReport {
    pub fn stable(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Walk a sequence of single-qubit region moves and check that the defect
/// keeps its extra qubit and its entanglement excess while the guarantee
/// `steps + w < d'` holds.
///
/// `w` defaults to the largest parent check weight. Inside the guarantee a
/// non-erasable intermediate region is a hard error; beyond it, steps are
/// recorded as out of guarantee and nothing is asserted.
pub fn deformation_stability(
    code: &CssCode,
    u0_row: usize,
    a0: &Region,
    moves: &[Move],
    w: Option<usize>,
    cfg: &ExecCfg<'_>,
) -> Result<DeformationReport> {
    let w = w.unwrap_or_else(|| code.p().max_row_weight().max(code.q().max_row_weight()));
    let base = crate::defect::construct_defect_with_region(code, u0_row, a0, None, cfg)?;
    let d_defect = base.d_defect();
    let kappa_start = base.kappa;

    let mut a = a0.clone();
    let mut steps = Vec::with_capacity(moves.len());
    let mut first_violation = None;
    for (idx, mv) in moves.iter().enumerate() {
        let index = idx + 1;
        a = apply_move(&a, *mv, code.n(), index)?;
        let in_guarantee = match d_defect {
            crate::css::Distance::Finite(d) => index + w < d,
            crate::css::Distance::Infinite => true,
        };
        let erasability = code.is_erasable(&a);
        let erasable = erasability.is_erasable();
        if in_guarantee {
            if let crate::css::Erasability::Blocked { side, witness } = erasability {
                return Err(Error::NotErasable { side, witness });
            }
        }
        let (kappa, gamma_val, ok) = if erasable {
            let kappa = defect_kappa(code, u0_row, &a)?;
            let g = gamma(code, &a)?.gamma;
            let ok = in_guarantee.then(|| kappa == kappa_start && g >= kappa as i64);
            (Some(kappa), Some(g), ok)
        } else {
            (None, None, None)
        };
        if ok == Some(false) && first_violation.is_none() {
            first_violation = Some(index);
        }
        steps.push(DeformationStep {
            index,
            region_size: a.len(),
            in_guarantee,
            erasable,
            kappa,
            gamma: gamma_val,
            ok,
        });
    }
    Ok(DeformationReport {
        d_defect,
        w,
        kappa_start,
        steps,
        first_violation,
    })
}

fn apply_move(a: &Region, mv: Move, n: usize, step: usize) -> Result<Region> {
    match mv {
        Move::Add(q) => {
            if q >= n {
                return Err(Error::ColumnOutOfRange { index: q, len: n });
            }
            if a.contains(q) {
                return Err(Error::InfeasibleSpec(alloc::format!(
                    "step {step} adds qubit {q} already in the region"
                )));
            }
            Ok(a.with(q))
        }
        Move::Remove(q) => {
            if !a.contains(q) {
                return Err(Error::InfeasibleSpec(alloc::format!(
                    "step {step} removes qubit {q} not in the region"
                )));
            }
            Ok(a.without(q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> StabilizerGroup {
        // <XX, ZZ>
        let gens = BitMatrix::from_index_rows(4, &[&[0, 1], &[2, 3]]);
        StabilizerGroup::new(gens, 2).unwrap()
    }

    #[test]
    fn bell_pair_has_one_split_pair() {
        let s = bell();
        assert_eq!(s.rank(), 2);
        let cut = decompose_cut(&s, &Region::from_indices([0]));
        assert_eq!((cut.rank_sa, cut.rank_sb, cut.rank_sab), (0, 0, 2));
        assert_eq!(cut.upsilon, 1);
    }

    #[test]
    fn product_state_has_no_entanglement() {
        // <Z0> x <Z1>
        let gens = BitMatrix::from_index_rows(4, &[&[2], &[3]]);
        let s = StabilizerGroup::new(gens, 2).unwrap();
        for a in [
            Region::empty(),
            Region::from_indices([0]),
            Region::from_indices([1]),
            Region::from_indices([0, 1]),
        ] {
            assert_eq!(decompose_cut(&s, &a).upsilon, 0);
        }
    }

    #[test]
    fn anticommuting_generators_are_rejected() {
        // X0 and Z0 anticommute.
        let gens = BitMatrix::from_index_rows(2, &[&[0], &[1]]);
        assert!(matches!(
            StabilizerGroup::new(gens, 1),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn cut_symmetry() {
        let s = bell();
        let a = Region::from_indices([0]);
        let b = a.complement(2);
        assert_eq!(decompose_cut(&s, &a).upsilon, decompose_cut(&s, &b).upsilon);
    }

    #[test]
    fn perimeter_counts_split_rows_only() {
        let m = BitMatrix::from_index_rows(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        assert_eq!(perimeter(&m, &Region::empty()), 0);
        assert_eq!(perimeter(&m, &Region::from_indices([0])), 1);
        assert_eq!(perimeter(&m, &Region::from_indices([1, 2])), 2);
        // A row fully inside the region is not split.
        assert_eq!(perimeter(&m, &Region::from_indices([0, 1])), 1);
    }

    #[test]
    fn state_from_code_cleans_logicals() {
        let p = BitMatrix::from_index_rows(4, &[&[0, 1, 2, 3]]);
        let q = BitMatrix::from_index_rows(4, &[&[0, 1, 2, 3]]);
        let code = CssCode::new(p, q).unwrap();
        let a = Region::from_indices([0]);
        let s = state_from_code(&code, &a).unwrap();
        assert_eq!(s.rank(), 4);
        // Z-part of every added logical avoids qubit 0: column n + 0 is
        // touched only by the Q row.
        let col = code.n();
        let touching = s
            .generators()
            .rows()
            .iter()
            .filter(|r| r.get(col))
            .count();
        assert_eq!(touching, 1);
    }

    #[test]
    fn gamma_zero_for_product_code() {
        // Fully constrained two-qubit code: independent Z checks.
        let p = BitMatrix::zeros(0, 2);
        let q = BitMatrix::from_index_rows(2, &[&[0], &[1]]);
        let code = CssCode::new(p, q).unwrap();
        let g = gamma(&code, &Region::from_indices([0])).unwrap();
        assert_eq!(g.cut.upsilon, 0);
        assert_eq!(g.perimeter_z, 0);
        assert_eq!(g.gamma, 0);
    }

    #[test]
    fn kappa_bound_trivially_true_for_zero_kappa() {
        let p = BitMatrix::zeros(0, 2);
        let q = BitMatrix::from_index_rows(2, &[&[0], &[1]]);
        let code = CssCode::new(p, q).unwrap();
        let r = check_kappa_bound(&code, &Region::from_indices([0]), 0).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn move_validation() {
        let a = Region::from_indices([1]);
        assert!(apply_move(&a, Move::Add(1), 4, 1).is_err());
        assert!(apply_move(&a, Move::Remove(0), 4, 1).is_err());
        assert!(apply_move(&a, Move::Add(9), 4, 1).is_err());
        let bigger = apply_move(&a, Move::Add(2), 4, 1).unwrap();
        assert_eq!(bigger.as_slice(), &[1, 2]);
    }
}
