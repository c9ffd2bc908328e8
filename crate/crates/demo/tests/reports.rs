use robin_bounds_demo::{check_report, radial_report, shape_report};
use robin_bounds_testkit::bessel;
use std::f64::consts::PI;

#[test]
fn radial_view_matches_bessel() {
    let v = radial_report(2.0, 1.0, 1.0).unwrap();
    assert!((v.lambda - bessel::robin_disk_lambda(1.0)).abs() < 1e-8);
    assert_eq!(v.r.len(), v.v.len());
    assert_eq!(*v.r.last().unwrap(), 1.0);
    assert!((v.v[0] - 1.0).abs() < 1e-12);
    assert!(radial_report(0.5, 1.0, 1.0).is_err());
}

#[test]
fn square_view() {
    let s = shape_report("regular:4", 0).unwrap();
    assert_eq!(s.vertices.len(), 4);
    assert!((s.hausdorff_star - (2.0 / PI - 0.5) * 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(s.layers.len(), 5);
    assert!(s.min_perimeter_rate >= 2.0 * PI);
    assert!(shape_report("blob", 0).is_err());
}

#[test]
fn checks_route_by_sign() {
    let pos = check_report("regular:6", 0, 2.0, 1.0).unwrap();
    assert_eq!(pos.theorem, "T1");
    assert!(pos.slack >= 0.0);
    let neg = check_report("regular:6", 0, 2.0, -1.0).unwrap();
    assert_eq!(neg.theorem, "T2");
    assert_eq!(neg.status, "holds");
    assert!(neg.lambda_upper <= neg.lambda_mesh);
    assert!(check_report("regular:6", 0, 2.0, 0.0).is_err());
}
