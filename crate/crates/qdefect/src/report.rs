//! JSON-facing mirrors of the core report types.
//!
//! Field names and order are frozen (schemas in `docs/schema/`). Distances
//! serialize as numbers, with `null` for the empty minimization domain;
//! operators serialize as ascending lists of their support indices.

use qdefect_core::css::{CssCode, Distance};
use qdefect_core::defect::{DefectReport, ExpansionBoundReport, LocalBoundReport, RemovalBoundsReport};
use qdefect_core::entropy::{DeformationReport, DeformationStep, GammaReport};
use qdefect_core::f2::{BitVector, Region};
use serde::Serialize;

fn dist(d: Distance) -> Option<usize> {
    d.finite()
}

fn support(v: &BitVector) -> Vec<usize> {
    v.support()
}

fn indices(r: &Region) -> Vec<usize> {
    r.as_slice().to_vec()
}

/// `info` output: structural facts, no searches.
#[derive(Serialize)]
pub struct InfoJson {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub rank_x: usize,
    pub rank_z: usize,
    pub x_checks: usize,
    pub z_checks: usize,
}

impl InfoJson {
    pub fn new(name: &str, code: &CssCode) -> Self {
        InfoJson {
            name: name.to_string(),
            n: code.n(),
            k: code.k(),
            rank_x: code.rank_p(),
            rank_z: code.rank_q(),
            x_checks: code.p().n_rows(),
            z_checks: code.q().n_rows(),
        }
    }
}

/// `distance` output. `reason` appears only when the distances are null
/// (no logical qubits, or the search budget ran out).
#[derive(Serialize)]
pub struct DistanceJson {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "d_X")]
    pub d_x: Option<usize>,
    #[serde(rename = "d_Z")]
    pub d_z: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct DefectJson {
    pub u0_row: usize,
    pub u0: Vec<usize>,
    pub a: Vec<usize>,
    pub r1: Option<usize>,
    pub parent_n: usize,
    pub parent_k: usize,
    pub d_x_parent: Option<usize>,
    pub d_z_parent: Option<usize>,
    pub defect_n: usize,
    pub defect_k: usize,
    pub kappa: usize,
    pub d_z_new: usize,
    pub d_x_new: usize,
    pub z_witness: Vec<usize>,
    pub x_witness: Vec<usize>,
    pub d_z_defect: Option<usize>,
    pub d_x_defect: Option<usize>,
    pub d_defect: Option<usize>,
    pub d_x_removed: Option<usize>,
    pub d_z_removed: Option<usize>,
    pub removal_ok: bool,
}

impl From<&DefectReport> for DefectJson {
    fn from(r: &DefectReport) -> Self {
        DefectJson {
            u0_row: r.u0_row,
            u0: support(&r.u0),
            a: indices(&r.a),
            r1: r.r1,
            parent_n: r.parent_n,
            parent_k: r.parent_k,
            d_x_parent: dist(r.d_x_parent),
            d_z_parent: dist(r.d_z_parent),
            defect_n: r.defect_code.n(),
            defect_k: r.defect_code.k(),
            kappa: r.kappa,
            d_z_new: r.d_z_new,
            d_x_new: r.d_x_new,
            z_witness: support(&r.z_witness),
            x_witness: support(&r.x_witness),
            d_z_defect: dist(r.d_z_defect),
            d_x_defect: dist(r.d_x_defect),
            d_defect: dist(r.d_defect()),
            d_x_removed: dist(r.d_x_removed),
            d_z_removed: dist(r.d_z_removed),
            removal_ok: r.removal_ok,
        }
    }
}

/// `entropy` output: cut ranks plus the perimeter/excess pair.
#[derive(Serialize)]
pub struct EntropyJson {
    pub a: Vec<usize>,
    pub rank_s: usize,
    pub rank_sa: usize,
    pub rank_sb: usize,
    pub rank_sab: usize,
    pub upsilon: usize,
    pub perimeter_z: usize,
    pub perimeter_x: usize,
    pub gamma: i64,
}

impl From<&GammaReport> for EntropyJson {
    fn from(r: &GammaReport) -> Self {
        EntropyJson {
            a: indices(&r.cut.a),
            rank_s: r.cut.rank_s,
            rank_sa: r.cut.rank_sa,
            rank_sb: r.cut.rank_sb,
            rank_sab: r.cut.rank_sab,
            upsilon: r.cut.upsilon,
            perimeter_z: r.perimeter_z,
            perimeter_x: r.perimeter_x,
            gamma: r.gamma,
        }
    }
}

#[derive(Serialize)]
pub struct RemovalJson {
    pub a_size: usize,
    pub k: usize,
    #[serde(rename = "d_X")]
    pub d_x: Option<usize>,
    #[serde(rename = "d_Z")]
    pub d_z: Option<usize>,
    pub d_x_removed: Option<usize>,
    pub d_z_removed: Option<usize>,
    pub x_lower_ok: bool,
    pub x_upper_ok: bool,
    pub z_ok: bool,
    pub holds: bool,
}

impl From<&RemovalBoundsReport> for RemovalJson {
    fn from(r: &RemovalBoundsReport) -> Self {
        RemovalJson {
            a_size: r.a_size,
            k: r.k,
            d_x: dist(r.d_x),
            d_z: dist(r.d_z),
            d_x_removed: dist(r.d_x_removed),
            d_z_removed: dist(r.d_z_removed),
            x_lower_ok: r.x_lower_ok,
            x_upper_ok: r.x_upper_ok,
            z_ok: r.z_ok,
            holds: r.holds(),
        }
    }
}

#[derive(Serialize)]
pub struct LocalBoundJson {
    pub u0_row: usize,
    pub r_hole: usize,
    pub r_indep: usize,
    pub dropped_rows: Vec<usize>,
    pub a: Vec<usize>,
    pub min_weight: usize,
    pub min_weight_outside: usize,
    pub full_witness: Vec<usize>,
    pub outside_witness: Vec<usize>,
    pub full_bound_ok: bool,
    pub outside_bound_ok: bool,
    pub full_saturated: bool,
    pub outside_saturated: bool,
    pub odd_shells_hit: bool,
    pub holds: bool,
}

impl From<&LocalBoundReport> for LocalBoundJson {
    fn from(r: &LocalBoundReport) -> Self {
        LocalBoundJson {
            u0_row: r.u0_row,
            r_hole: r.r_hole,
            r_indep: r.r_indep,
            dropped_rows: r.dropped_rows.clone(),
            a: indices(&r.a),
            min_weight: r.min_weight,
            min_weight_outside: r.min_weight_outside,
            full_witness: support(&r.full_witness),
            outside_witness: support(&r.outside_witness),
            full_bound_ok: r.full_bound_ok,
            outside_bound_ok: r.outside_bound_ok,
            full_saturated: r.full_saturated,
            outside_saturated: r.outside_saturated,
            odd_shells_hit: r.odd_shells_hit,
            holds: r.holds(),
        }
    }
}

#[derive(Serialize)]
pub struct ExpansionJson {
    pub u0_row: usize,
    pub r1: usize,
    pub a: Vec<usize>,
    pub d_z_new: usize,
    pub f_at_r1: usize,
    pub f_actual: Vec<usize>,
    pub monotone_ok: bool,
    pub first_non_increase: Option<usize>,
    pub bound_ok: bool,
    pub slack: i64,
}

impl From<&ExpansionBoundReport> for ExpansionJson {
    fn from(r: &ExpansionBoundReport) -> Self {
        ExpansionJson {
            u0_row: r.u0_row,
            r1: r.r1,
            a: indices(&r.a),
            d_z_new: r.d_z_new,
            f_at_r1: r.f_at_r1,
            f_actual: r.profile.f_actual.clone(),
            monotone_ok: r.profile.monotone_ok,
            first_non_increase: r.profile.first_non_increase,
            bound_ok: r.bound_ok,
            slack: r.slack,
        }
    }
}

#[derive(Serialize)]
pub struct DeformStepJson {
    pub index: usize,
    pub region_size: usize,
    pub in_guarantee: bool,
    pub erasable: bool,
    pub kappa: Option<usize>,
    pub gamma: Option<i64>,
    pub ok: Option<bool>,
}

#[derive(Serialize)]
pub struct DeformJson {
    pub d_defect: Option<usize>,
    pub w: usize,
    pub kappa_start: usize,
    pub stable: bool,
    pub first_violation: Option<usize>,
    pub steps: Vec<DeformStepJson>,
}

impl From<&DeformationReport> for DeformJson {
    fn from(r: &DeformationReport) -> Self {
        DeformJson {
            d_defect: dist(r.d_defect),
            w: r.w,
            kappa_start: r.kappa_start,
            stable: r.stable(),
            first_violation: r.first_violation,
            steps: r.steps.iter().map(step).collect(),
        }
    }
}

fn step(s: &DeformationStep) -> DeformStepJson {
    DeformStepJson {
        index: s.index,
        region_size: s.region_size,
        in_guarantee: s.in_guarantee,
        erasable: s.erasable,
        kappa: s.kappa,
        gamma: s.gamma,
        ok: s.ok,
    }
}

/// Plot-ready trace of a deformation walk, one line per step. Optional
/// cells are empty outside the range where they are defined.
pub fn deform_csv(r: &DeformationReport) -> String {
    let mut out = String::from("step,region_size,in_guarantee,erasable,kappa,gamma,ok\n");
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(T::to_string).unwrap_or_default()
    }
    for s in &r.steps {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.index,
            s.region_size,
            s.in_guarantee,
            s.erasable,
            cell(&s.kappa),
            cell(&s.gamma),
            cell(&s.ok),
        ));
    }
    out
}

/// Canonical serialization for every report: compact JSON, one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize infallibly");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdefect_core::f2::search::ExecCfg;
    use qdefect_core::families::Toric;

    #[test]
    fn distance_json_shape_is_frozen() {
        let json = to_json(&DistanceJson {
            n: 18,
            k: 2,
            d_x: Some(3),
            d_z: Some(3),
            reason: None,
        });
        assert_eq!(json, "{\"n\":18,\"k\":2,\"d_X\":3,\"d_Z\":3}\n");
        let json = to_json(&DistanceJson {
            n: 2,
            k: 0,
            d_x: None,
            d_z: None,
            reason: Some("empty domain".into()),
        });
        assert_eq!(
            json,
            "{\"n\":2,\"k\":0,\"d_X\":null,\"d_Z\":null,\"reason\":\"empty domain\"}\n"
        );
    }

    #[test]
    fn defect_json_mirrors_the_report() {
        let cfg = ExecCfg::default();
        let parent = Toric::new(3).unwrap().code();
        let q = parent.q().without_row(parent.q().n_rows() - 1).unwrap();
        let code = CssCode::new(parent.p().clone(), q).unwrap();
        let report = qdefect_core::defect::construct_defect(&code, 0, 1, &cfg).unwrap();
        let json = DefectJson::from(&report);
        assert_eq!(json.kappa, 1);
        assert_eq!(json.a, report.a.as_slice());
        assert_eq!(json.defect_k, json.parent_k + 1);
        let text = to_json(&json);
        assert!(text.starts_with("{\"u0_row\":0,\"u0\":["), "{text}");
    }

    #[test]
    fn csv_cells_go_empty_when_tracking_stops() {
        let r = DeformationReport {
            d_defect: Distance::Finite(3),
            w: 4,
            kappa_start: 1,
            steps: vec![
                DeformationStep {
                    index: 1,
                    region_size: 5,
                    in_guarantee: false,
                    erasable: true,
                    kappa: Some(1),
                    gamma: Some(1),
                    ok: None,
                },
                DeformationStep {
                    index: 2,
                    region_size: 6,
                    in_guarantee: false,
                    erasable: false,
                    kappa: None,
                    gamma: None,
                    ok: None,
                },
            ],
            first_violation: None,
        };
        assert_eq!(
            deform_csv(&r),
            "step,region_size,in_guarantee,erasable,kappa,gamma,ok\n\
             1,5,false,true,1,1,\n\
             2,6,false,false,,,\n"
        );
    }
}
