//! Expansion profiles checked against a from-scratch combination scan
//! (Gosper's hack over row subsets, no shared XOR state).

use qdefect_core::defect::expansion_profile;
use qdefect_core::f2::search::ExecCfg;
use qdefect_core::f2::{BitMatrix, BitVector};
use qdefect_core::families::{PlanarSurface, Toric};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Minimum weight of a XOR of exactly `m` rows, scanning subsets by
/// next-bit-permutation.
fn oracle_f(mtx: &BitMatrix, m: usize) -> usize {
    let r = mtx.n_rows();
    assert!(m >= 1 && m <= r && r < 63);
    let mut best = usize::MAX;
    let mut subset: u64 = (1 << m) - 1;
    while subset < (1 << r) {
        let mut acc = BitVector::zeros(mtx.n_cols());
        for b in 0..r {
            if subset >> b & 1 == 1 {
                acc.xor_assign(mtx.row(b));
            }
        }
        best = best.min(acc.weight());
        // Gosper: next subset with the same popcount.
        let c = subset & subset.wrapping_neg();
        let rr = subset + c;
        subset = (((rr ^ subset) >> 2) / c) | rr;
    }
    best
}

#[test]
fn profiles_match_oracle_on_families() {
    let cfg = ExecCfg::default();
    for q in [
        Toric::new(2).unwrap().code().q().clone(),
        Toric::new(3).unwrap().code().q().clone(),
        PlanarSurface::new(3).unwrap().code().q().clone(),
    ] {
        let m_max = q.n_rows().min(6);
        let profile = expansion_profile(&q, m_max, &cfg).unwrap();
        for m in 1..=m_max {
            assert_eq!(profile.at(m), oracle_f(&q, m), "m={m}");
        }
    }
}

#[test]
fn profiles_match_oracle_on_random_matrices() {
    let mut rng = StdRng::seed_from_u64(99);
    let cfg = ExecCfg::default();
    for _ in 0..30 {
        let rows = rng.random_range(2..=8usize);
        let cols = rng.random_range(3..=12usize);
        let m = BitMatrix::from_rows(
            (0..rows)
                .map(|_| {
                    let mut v = BitVector::zeros(cols);
                    for j in 0..cols {
                        v.set(j, rng.random_bool(0.35));
                    }
                    v
                })
                .collect(),
            cols,
        )
        .unwrap();
        let profile = expansion_profile(&m, rows, &cfg).unwrap();
        for k in 1..=rows {
            assert_eq!(profile.at(k), oracle_f(&m, k), "rows={rows} m={k}");
        }
        // The monotonicity verdict agrees with the raw values.
        let increasing = (2..=rows).all(|k| profile.at(k) > profile.at(k - 1));
        assert_eq!(profile.monotone_ok, increasing);
        if let Some(at) = profile.first_non_increase {
            assert!(profile.at(at) <= profile.at(at - 1));
            assert!((2..at).all(|k| profile.at(k) > profile.at(k - 1)));
        }
    }
}

#[test]
fn budget_refuses_oversized_enumerations() {
    let m = BitMatrix::zeros(40, 4);
    let tiny = ExecCfg::serial(1 << 10);
    assert!(matches!(
        expansion_profile(&m, 20, &tiny),
        Err(qdefect_core::Error::BudgetExceeded { .. })
    ));
}
