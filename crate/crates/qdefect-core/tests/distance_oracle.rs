//! Distance computations checked against a direct scan of all 2^n vectors.
//!
//! The oracle shares nothing with the Gray-code search: it tests kernel and
//! row-space membership per vector and never builds a coset.

use qdefect_core::css::{CssCode, Distance};
use qdefect_core::f2::search::ExecCfg;
use qdefect_core::f2::{BitMatrix, BitVector};
use qdefect_core::families::{cycle_matrix, hypergraph_product, PlanarSurface, Toric};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn vector_from_index(n: usize, idx: u64) -> BitVector {
    let mut v = BitVector::zeros(n);
    for b in 0..n {
        if idx >> b & 1 == 1 {
            v.set(b, true);
        }
    }
    v
}

/// Minimum weight over `ker(stab_dual) \ rowspace(stab_own)` by scanning
/// every vector of length `n`.
fn oracle_side_distance(stab_own: &BitMatrix, stab_dual: &BitMatrix) -> Option<usize> {
    let n = stab_own.n_cols();
    assert!(n <= 20, "oracle is exponential in n");
    let mut best = None;
    for idx in 0u64..(1 << n) {
        let v = vector_from_index(n, idx);
        if !stab_dual.mul_vec(&v).is_zero() {
            continue;
        }
        if stab_own.in_rowspace(&v).is_some() {
            continue;
        }
        let w = v.weight();
        best = Some(best.map_or(w, |b: usize| b.min(w)));
    }
    best
}

fn check_code(code: &CssCode) {
    let cfg = ExecCfg::default();
    let d = code.distances(&cfg).unwrap();
    let ox = oracle_side_distance(code.p(), code.q());
    let oz = oracle_side_distance(code.q(), code.p());
    match ox {
        Some(w) => assert_eq!(d.d_x, Distance::Finite(w)),
        None => assert_eq!(d.d_x, Distance::Infinite),
    }
    match oz {
        Some(w) => assert_eq!(d.d_z, Distance::Finite(w)),
        None => assert_eq!(d.d_z, Distance::Infinite),
    }
    // Witnesses are actual minimum-weight logicals.
    if let (Distance::Finite(w), Some(x)) = (d.d_x, &d.x_witness) {
        assert_eq!(x.weight(), w);
        assert!(code.q().mul_vec(x).is_zero());
        assert!(code.p().in_rowspace(x).is_none());
    }
    if let (Distance::Finite(w), Some(z)) = (d.d_z, &d.z_witness) {
        assert_eq!(z.weight(), w);
        assert!(code.p().mul_vec(z).is_zero());
        assert!(code.q().in_rowspace(z).is_none());
    }
}

#[test]
fn fixed_small_codes_match_oracle() {
    // [[4,2,2]]
    let p = BitMatrix::from_index_rows(4, &[&[0, 1, 2, 3]]);
    let q = BitMatrix::from_index_rows(4, &[&[0, 1, 2, 3]]);
    check_code(&CssCode::new(p, q).unwrap());

    // Steane [[7,1,3]]
    let rows: &[&[usize]] = &[&[0, 2, 4, 6], &[1, 2, 5, 6], &[3, 4, 5, 6]];
    let p = BitMatrix::from_index_rows(7, rows);
    let q = BitMatrix::from_index_rows(7, rows);
    check_code(&CssCode::new(p, q).unwrap());

    // Fully constrained code: no logicals on either side.
    let p = BitMatrix::from_index_rows(2, &[&[0, 1]]);
    let q = BitMatrix::from_index_rows(2, &[&[0, 1]]);
    check_code(&CssCode::new(p, q).unwrap());
}

#[test]
fn family_codes_match_oracle() {
    check_code(&Toric::new(2).unwrap().code()); // n = 8
    check_code(&PlanarSurface::new(2).unwrap().code()); // n = 5
    check_code(&PlanarSurface::new(3).unwrap().code()); // n = 13
    check_code(&hypergraph_product(&cycle_matrix(2), &cycle_matrix(2))); // n = 8
}

/// Random CSS instances: random X checks, Z checks sampled from their
/// kernel so orthogonality holds by construction.
#[test]
fn random_codes_match_oracle() {
    let mut rng = StdRng::seed_from_u64(2026);
    for trial in 0..40 {
        let n = rng.random_range(3..=11);
        let p_rows = rng.random_range(1..=3usize);
        let mut rows = Vec::new();
        for _ in 0..p_rows {
            let mut v = BitVector::zeros(n);
            for b in 0..n {
                v.set(b, rng.random_bool(0.4));
            }
            rows.push(v);
        }
        let p = BitMatrix::from_rows(rows, n).unwrap();
        let kernel = p.kernel_basis();
        if kernel.n_rows() == 0 {
            continue;
        }
        let q_rows = rng.random_range(1..=kernel.n_rows() + 1);
        let mut rows = Vec::new();
        for _ in 0..q_rows {
            let mut acc = BitVector::zeros(n);
            for r in 0..kernel.n_rows() {
                if rng.random_bool(0.5) {
                    acc.xor_assign(kernel.row(r));
                }
            }
            rows.push(acc);
        }
        let q = BitMatrix::from_rows(rows, n).unwrap();
        let code = CssCode::new(p, q).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        check_code(&code);
    }
}
