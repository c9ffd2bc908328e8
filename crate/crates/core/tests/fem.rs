use robin_bounds::fem::{discrete_quotient, minimize_rayleigh_p, solve_p2, solve_p2_richardson, triangulate};
use robin_bounds::geom::ConvexPolygon;
use robin_bounds::numerics::rel_diff;
use robin_bounds::radial::solve_radial;
use robin_bounds_testkit::bessel;
use std::f64::consts::PI;

#[test]
fn fine_polygon_matches_disk_bessel_root() {
    let poly = ConvexPolygon::regular(256, 1.0).unwrap();
    let e = solve_p2_richardson(&poly, 1.0, 4).unwrap();
    let want = bessel::robin_disk_lambda(1.0);
    let got = e.richardson_estimate.unwrap().value;
    assert!(rel_diff(got, want) < 3e-3, "{got} vs {want}");
    assert!(e.lambda_h >= got);
}

#[test]
fn general_p_on_fine_polygon() {
    let poly = ConvexPolygon::regular(256, 1.0).unwrap();
    let radius = poly.perimeter() / (2.0 * PI);
    for (p, beta) in [(1.5, 1.0), (3.0, -1.0)] {
        let e = minimize_rayleigh_p(&triangulate(&poly, 4), p, beta, 400).unwrap();
        let want = solve_radial(2, p, beta, radius).unwrap().lambda;
        assert!(rel_diff(e.lambda_h, want) < 1e-2, "p {p} beta {beta}: {} vs {want}", e.lambda_h);
        assert!(e.history.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}

#[test]
fn p2_minimiser_agrees_with_eigensolver() {
    let mesh = triangulate(&ConvexPolygon::rectangle(2.0, 1.0).unwrap(), 3);
    for beta in [-1.0, 1.0] {
        let lin = solve_p2(&mesh, beta).unwrap();
        let ncg = minimize_rayleigh_p(&mesh, 2.0, beta, 400).unwrap();
        assert!(rel_diff(lin.lambda_h, ncg.lambda_h) < 1e-7, "{} vs {}", lin.lambda_h, ncg.lambda_h);
        assert!(rel_diff(discrete_quotient(&mesh, 2.0, beta, &lin.values), lin.lambda_h) < 1e-9);
    }
}

#[test]
fn dilation_scaling() {
    let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
    let big = sq.scaled(2.0);
    for (p, beta) in [(2.0, 1.0), (2.0, -1.0), (1.5, 0.5)] {
        let t: f64 = 2.0;
        let lhs = minimize_rayleigh_p(&triangulate(&big, 4), p, beta, 400).unwrap().lambda_h;
        let rhs = t.powf(-p) * minimize_rayleigh_p(&triangulate(&sq, 4), p, t.powf(p - 1.0) * beta, 400).unwrap().lambda_h;
        // same mesh up to scale, so the identity holds to solver precision
        assert!(rel_diff(lhs, rhs) < 1e-6, "p {p} beta {beta}: {lhs} vs {rhs}");
    }
}

#[test]
fn eigenvalue_increases_with_beta() {
    let mesh = triangulate(&ConvexPolygon::regular(6, 1.0).unwrap(), 3);
    let lams: Vec<f64> = [-2.0, -1.0, -0.2, 0.2, 1.0, 2.0].iter().map(|&b| solve_p2(&mesh, b).unwrap().lambda_h).collect();
    assert!(lams.windows(2).all(|w| w[1] > w[0]), "{lams:?}");
    assert!(lams[2] < 0.0 && lams[3] > 0.0);
}

#[test]
fn reverse_faber_krahn_on_square() {
    let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
    let star = solve_radial(2, 2.0, -1.0, sq.perimeter() / (2.0 * PI)).unwrap().lambda;
    let e = solve_p2(&triangulate(&sq, 4), -1.0).unwrap();
    assert!(e.lambda_h <= star, "{} vs {star}", e.lambda_h);
}

#[test]
fn refinement_converges_from_above() {
    let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
    let lams: Vec<f64> = (1..=4).map(|l| solve_p2(&triangulate(&sq, l), 1.0).unwrap().lambda_h).collect();
    assert!(lams.windows(2).all(|w| w[1] < w[0]), "{lams:?}");
    // quadratic rate: successive gaps shrink by about four
    let g1 = lams[1] - lams[2];
    let g2 = lams[2] - lams[3];
    assert!((g1 / g2 - 4.0).abs() < 0.5, "{}", g1 / g2);
}

#[test]
fn eigenfunction_sign() {
    let mesh = triangulate(&ConvexPolygon::rectangle(1.0, 1.0).unwrap(), 3);
    for beta in [-3.0, -0.5, 0.5, 5.0] {
        assert!(solve_p2(&mesh, beta).unwrap().has_constant_sign());
    }
}
