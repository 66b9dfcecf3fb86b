use num::complex::Complex64;

use super::*;
use crate::branch::{Branch, ComplexPoint};
use crate::error::Error;
use crate::resolution::Chart;
use crate::series::rat_int;

fn branch(src: &str) -> Branch {
    Branch::parse(src).unwrap().extend_precision(64)
}

#[test]
fn cusp_to_scaled_cusp() {
    let g1 = branch("x = t^2\ny = t^3");
    let g2 = branch("x = t^2\ny = 2 t^3");
    let plan = build_plan(&g1, &g2).unwrap();
    assert_eq!(plan.levels(), vec![2, 3]);
    let first = &plan.stages[0];
    assert_eq!(
        first.path.steps,
        vec![(Chart::A, rat_int(0)), (Chart::B, rat_int(0))]
    );
    let lambda = first.field.lambda().unwrap();
    assert!((lambda - Complex64::new(4f64.ln(), 0.0)).norm() < 1e-15);
    match &plan.stages[1].field.kind {
        FieldKind::GraphMatch { s1, s2, .. } => assert_eq!(s1, s2),
        other => panic!("unexpected {other:?}"),
    }
    // (t^2, t^3) goes to (4 t^2, 16 t^3) = (s^2, 2 s^3) with s = 2t
    let t = 0.05;
    let out = apply_plan(&plan, &[ComplexPoint::real(t * t, t * t * t)], 1e-3).unwrap();
    assert!(out[0].dist(&ComplexPoint::real(4.0 * t * t, 16.0 * t * t * t)) < 1e-10);
}

#[test]
fn identity_plan_is_trivial() {
    let g = branch("x = t^2\ny = t^3 + t^4");
    let plan = build_plan(&g, &g).unwrap();
    assert_eq!(plan.stages.len(), 1);
    let report = verify_isotopy(&g, &g, &plan, &VerifyOptions::default()).unwrap();
    assert!(report.max_distance < 1e-12, "{}", report.max_distance);
    for r in &report.records {
        assert_eq!(r.start, r.end);
    }
}

#[test]
fn rejects_non_equisingular() {
    let err = build_plan(&branch("x = t^2\ny = t^3"), &branch("x = t^4\ny = t^6 + t^7"));
    match err {
        Err(Error::NotEquisingular(msg)) => assert_eq!(msg, "r differs (3 vs 5)"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn cusp_to_perturbed_cusp() {
    let g1 = branch("x = t^2\ny = t^3");
    let g2 = branch("x = t^2\ny = t^3 + t^4");
    let plan = build_plan(&g1, &g2).unwrap();
    assert_eq!(plan.levels(), vec![3]);
    let report = verify_isotopy(&g1, &g2, &plan, &VerifyOptions::default()).unwrap();
    assert!(report.pass, "max distance {}", report.max_distance);
    assert!(report.max_distance < 1e-8);
    for r in &report.records {
        let alg = r.algebraic_distance.unwrap();
        assert!(alg < 1e-6, "algebraic {alg}");
    }
}

#[test]
fn smooth_branches_with_different_tangents() {
    let g1 = branch("x = t\ny = t^2");
    let g2 = branch("x = t\ny = t + t^2");
    let plan = build_plan(&g1, &g2).unwrap();
    assert_eq!(plan.levels(), vec![0, 1]);
    let report = verify_isotopy(&g1, &g2, &plan, &VerifyOptions::default()).unwrap();
    assert!(report.pass, "max distance {}", report.max_distance);
}

#[test]
fn deeper_branch() {
    let g1 = branch("x = t^4\ny = t^6 + t^7");
    let g2 = branch("x = t^4\ny = 2 t^6 - t^7 + t^8");
    // at |gamma| = 0.05 the deep chart coordinates reach the corner of E3
    assert!(matches!(build_plan(&g1, &g2), Err(Error::Construction(_))));
    let radius = 1e-3;
    let opts = PlanOptions {
        working_radius: radius,
        ..PlanOptions::default()
    };
    let plan = build_plan_with(&g1, &g2, &opts).unwrap();
    let verify = VerifyOptions {
        radius,
        ..VerifyOptions::default()
    };
    let report = verify_isotopy(&g1, &g2, &plan, &verify).unwrap();
    assert!(report.pass, "max distance {}", report.max_distance);
}

#[test]
fn points_off_support_unchanged() {
    let g1 = branch("x = t^2\ny = t^3");
    let g2 = branch("x = t^2\ny = 2 t^3");
    let plan = build_plan(&g1, &g2).unwrap();
    let far = [
        ComplexPoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.3, 0.1)),
        ComplexPoint::ORIGIN,
        ComplexPoint::real(0.0, 5.0),
    ];
    let out = apply_plan(&plan, &far, 1e-3).unwrap();
    assert_eq!(out.as_slice(), far.as_slice());
}

#[test]
fn sampling_respects_radius() {
    let g = branch("x = t^2\ny = t^3");
    let ts = sample_parameters(&g, 40, 0.05).unwrap();
    assert_eq!(ts.len(), 40);
    for t in &ts {
        assert!(g.eval(*t).norm() <= 0.05);
    }
    let ratio = ts[0].norm() / ts[39].norm();
    assert!((ratio - 1000.0).abs() < 50.0);
}
