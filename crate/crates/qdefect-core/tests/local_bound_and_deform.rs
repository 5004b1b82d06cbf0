//! Local distance bounds with an explicit dependent row, and defect
//! stability under step-by-step region deformation.

use qdefect_core::css::CssCode;
use qdefect_core::defect::verify_local_distance_bound;
use qdefect_core::entropy::{deformation_stability, gamma, Move};
use qdefect_core::f2::search::ExecCfg;
use qdefect_core::f2::{BitMatrix, BitVector, Region};
use qdefect_core::families::{PlanarSurface, Toric};
use qdefect_core::Error;

/// Planar surface with the boundary relation appended: the sum of all
/// faces equals the top+bottom edge indicator, so appending it as an extra
/// Z check creates exactly one dependent row, far from interior faces.
fn planar_with_boundary_row(l: usize) -> (CssCode, PlanarSurface, usize) {
    let p = PlanarSurface::new(l).unwrap();
    let code = p.code();
    let mut q_rows: Vec<BitVector> = code.q().rows().to_vec();
    let appended = q_rows.len();
    q_rows.push(p.boundary());
    let q = BitMatrix::from_rows(q_rows, code.n()).unwrap();
    (CssCode::new(code.p().clone(), q).unwrap(), p, appended)
}

#[test]
fn interior_face_meets_local_bound_with_slack_choice() {
    let cfg = ExecCfg::default();
    let (code, p, boundary_row) = planar_with_boundary_row(4);
    let u0 = p.face_row(1, 1);

    // Greedy drop choice: the verifier picks dependent rows as far from
    // the promoted check as possible.
    let greedy = verify_local_distance_bound(&code, u0, 1, 2, None, &cfg).unwrap();
    assert!(greedy.holds());
    assert!(greedy.min_weight >= 2);
    assert!(greedy.min_weight_outside >= 1);
    assert!(greedy.odd_shells_hit);
    // Exactly one dependent row exists, so exactly one drop.
    assert_eq!(greedy.dropped_rows.len(), 1);

    // Explicit drop of the boundary row itself: both bounds saturate.
    let explicit =
        verify_local_distance_bound(&code, u0, 1, 2, Some(&[boundary_row]), &cfg).unwrap();
    assert!(explicit.holds());
    assert_eq!(explicit.dropped_rows, vec![boundary_row]);
    assert_eq!(explicit.min_weight, 2);
    assert_eq!(explicit.min_weight_outside, 1);
    assert!(explicit.full_saturated);
    assert!(explicit.outside_saturated);
    assert!(explicit.odd_shells_hit);
}

#[test]
fn local_bound_validates_drop_lists() {
    let cfg = ExecCfg::default();
    let (code, p, boundary_row) = planar_with_boundary_row(4);
    let u0 = p.face_row(1, 1);

    // Dropping a row inside the protected ball is refused.
    let inside = p.face_row(0, 1); // shares an edge with u0's face
    match verify_local_distance_bound(&code, u0, 1, 2, Some(&[inside]), &cfg) {
        Err(Error::PreconditionFailed { name, .. }) => assert_eq!(name, "drop-outside-ball"),
        other => panic!("expected drop validation failure, got {other:?}"),
    }

    // Dropping two rows of the single relation shrinks the row space: with
    // the boundary row gone nothing can stand in for the far face.
    let far = p.face_row(2, 3);
    match verify_local_distance_bound(&code, u0, 1, 2, Some(&[far, boundary_row]), &cfg) {
        Err(Error::PreconditionFailed { name, .. }) => assert_eq!(name, "drop-rank"),
        other => panic!("expected rank validation failure, got {other:?}"),
    }

    // Dropping nothing leaves a dependent row in place.
    match verify_local_distance_bound(&code, u0, 1, 2, Some(&[]), &cfg) {
        Err(Error::PreconditionFailed { name, .. }) => assert_eq!(name, "drop-full-rank"),
        other => panic!("expected full-rank validation failure, got {other:?}"),
    }
}

#[test]
fn independence_radius_precondition_is_enforced() {
    let cfg = ExecCfg::default();
    // At L = 2 the whole relation (both faces plus the boundary row) fits
    // within Tanner distance 2 of either face, so no independence radius
    // is available at all.
    let (code, p, _) = planar_with_boundary_row(2);
    let u0 = p.face_row(0, 0);
    match verify_local_distance_bound(&code, u0, 0, 1, None, &cfg) {
        Err(Error::PreconditionFailed { name, .. }) => assert_eq!(name, "local-independence"),
        other => panic!("expected independence failure, got {other:?}"),
    }
}

/// Deforming the hole of a toric defect edge by edge: the gained qubit and
/// the entanglement excess both persist.
#[test]
fn toric_hole_deformation_keeps_kappa_and_gamma() {
    let cfg = ExecCfg::default();
    let t = Toric::new(4).unwrap();
    let parent = t.code();
    let q_reduced = parent.q().without_row(parent.q().n_rows() - 1).unwrap();
    let code = CssCode::new(parent.p().clone(), q_reduced).unwrap();

    let u0 = t.plaquette_row(1, 1); // row 5, far from the dropped (3,3)
    let a0 = Region::from_indices(t.plaquette_support(1, 1));

    // Baseline: the initial hole carries one extra qubit and gamma = 1.
    let g0 = gamma(&code, &a0).unwrap();
    assert_eq!(g0.perimeter_z, 4);
    assert_eq!(g0.cut.upsilon, 3);
    assert_eq!(g0.gamma, 1);

    let moves = [
        Move::Add(t.h(0, 1)),
        Move::Add(t.v(0, 1)),
        Move::Remove(t.h(0, 1)),
    ];
    let report = deformation_stability(&code, u0, &a0, &moves, None, &cfg).unwrap();
    assert_eq!(report.kappa_start, 1);
    assert_eq!(report.steps.len(), 3);
    for step in &report.steps {
        assert!(step.erasable);
        assert_eq!(step.kappa, Some(1));
        assert_eq!(step.gamma, Some(1));
    }
    assert_eq!(report.steps[0].region_size, 5);
    assert_eq!(report.steps[1].region_size, 6);
    assert_eq!(report.steps[2].region_size, 5);
    assert!(report.stable());
}

/// Walking the hole onto a logical loop is recorded, not asserted, once
/// the step budget exceeds the guarantee.
#[test]
fn deformation_records_erasability_loss() {
    let cfg = ExecCfg::default();
    let t = Toric::new(4).unwrap();
    let parent = t.code();
    let q_reduced = parent.q().without_row(parent.q().n_rows() - 1).unwrap();
    let code = CssCode::new(parent.p().clone(), q_reduced).unwrap();

    let u0 = t.plaquette_row(1, 1);
    let a0 = Region::from_indices(t.plaquette_support(1, 1));
    // a0 already contains h(1,1) and h(2,1); absorbing the rest of the
    // vertical column h(*,1) completes an X logical loop.
    let moves = [Move::Add(t.h(0, 1)), Move::Add(t.h(3, 1))];
    let report = deformation_stability(&code, u0, &a0, &moves, None, &cfg).unwrap();
    // The hole defect has a weight-1 conjugate logical hugging the hole,
    // so no step is inside the stability window.
    assert!(report.steps.iter().all(|s| !s.in_guarantee));
    assert!(report.steps[0].erasable);
    let last = &report.steps[1];
    assert!(!last.erasable);
    assert_eq!(last.kappa, None);
    assert_eq!(last.gamma, None);
    assert_eq!(last.ok, None);
    assert!(report.stable()); // no in-window violation was observed
}

/// Invalid moves surface as spec errors with the offending step.
#[test]
fn deformation_rejects_malformed_moves() {
    let cfg = ExecCfg::default();
    let t = Toric::new(3).unwrap();
    let parent = t.code();
    let q_reduced = parent.q().without_row(parent.q().n_rows() - 1).unwrap();
    let code = CssCode::new(parent.p().clone(), q_reduced).unwrap();
    let u0 = t.plaquette_row(1, 1);
    let a0 = Region::from_indices(t.plaquette_support(1, 1));

    let dup = [Move::Add(t.h(1, 1))]; // already inside the hole
    assert!(matches!(
        deformation_stability(&code, u0, &a0, &dup, None, &cfg),
        Err(Error::InfeasibleSpec(_))
    ));
    let missing = [Move::Remove(t.h(0, 0))]; // not in the hole
    assert!(matches!(
        deformation_stability(&code, u0, &a0, &missing, None, &cfg),
        Err(Error::InfeasibleSpec(_))
    ));
}
