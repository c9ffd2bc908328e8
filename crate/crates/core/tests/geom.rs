use proptest::prelude::*;
use robin_bounds::geom::{
    disk_overlap, erosion_profile, fraenkel_asymmetry, hausdorff_at, hausdorff_to_ball, AnalyticBody3D, ConvexPolygon,
};
use robin_bounds::shapes::generate_shape;
use robin_bounds_testkit::geometry::{
    box_parallel_volume, fit_cubic, hausdorff_polygon_disk, monte_carlo_area, polar_disk_overlap,
    random_convex_polygon, sampled_support_deviation, Pt,
};
use std::f64::consts::PI;

fn to_pts(poly: &ConvexPolygon) -> Vec<Pt> {
    poly.vertices().iter().map(|v| (v[0], v[1])).collect()
}

fn random_poly(m: usize, seed: u64) -> ConvexPolygon {
    let v = random_convex_polygon(m, seed).into_iter().map(|(x, y)| [x, y]).collect();
    ConvexPolygon::new(v).unwrap()
}

#[test]
fn shoelace_matches_monte_carlo() {
    for seed in 0..8 {
        let poly = random_poly(9, seed);
        let (mc, se) = monte_carlo_area(&to_pts(&poly), 400_000, seed + 100);
        assert!((poly.area() - mc).abs() < 5.0 * se, "seed {seed}: {} vs {mc} +- {se}", poly.area());
    }
}

#[test]
fn hausdorff_matches_brute_force() {
    for spec in ["regular:3", "regular:4", "rect:2:1", "random:6:3", "random:11:8"] {
        let poly = generate_shape(spec, 0).unwrap();
        let r = poly.perimeter() / (2.0 * PI);
        let (h, c) = hausdorff_to_ball(&poly, r);
        let pts = to_pts(&poly);
        let brute = hausdorff_polygon_disk(&pts, (c[0], c[1]), r, 20_000);
        assert!((h - brute).abs() < 1e-5, "{spec}: {h} vs {brute}");
        let dev = sampled_support_deviation(&pts, (c[0], c[1]), r);
        assert!((h - dev).abs() < 1e-8, "{spec}: {h} vs support {dev}");
        // the returned centre is optimal against a coarse grid of shifts
        for dx in [-0.05, 0.0, 0.05] {
            for dy in [-0.05, 0.0, 0.05] {
                assert!(hausdorff_at(&poly, [c[0] + dx, c[1] + dy], r) >= h - 1e-9);
            }
        }
    }
}

#[test]
fn disk_overlap_matches_polar_grid() {
    for spec in ["regular:4", "regular:5", "rect:3:1", "random:7:2"] {
        let poly = generate_shape(spec, 0).unwrap();
        let r = (poly.area() / PI).sqrt();
        let c = poly.centroid();
        let exact = disk_overlap(&poly, c, r);
        let grid = polar_disk_overlap(&to_pts(&poly), (c[0], c[1]), r, 200_000);
        assert!((exact - grid).abs() < 1e-8, "{spec}: {exact} vs {grid}");
        let (alpha, cf) = fraenkel_asymmetry(&poly);
        let at_centroid = 2.0 * (1.0 - disk_overlap(&poly, c, r) / poly.area());
        assert!(alpha <= at_centroid + 1e-10, "{spec}: {alpha} vs {at_centroid}");
        assert!((alpha - 2.0 * (1.0 - disk_overlap(&poly, cf, r) / poly.area())).abs() < 1e-10);
    }
}

#[test]
fn square_fraenkel_asymmetry() {
    let (alpha, _) = fraenkel_asymmetry(&ConvexPolygon::rectangle(1.0, 1.0).unwrap());
    assert!((alpha - 0.1812).abs() < 5e-4, "{alpha}");
}

#[test]
fn box_quermassintegral_from_parallel_volumes() {
    for (a, b, c) in [(1.0, 1.0, 1.0), (2.0, 1.0, 0.5), (3.0, 0.7, 1.3)] {
        let body = AnalyticBody3D::Box { a, b, c };
        let rhos = [0.1, 0.3, 0.6, 1.0];
        let samples = rhos.map(|r| (r, box_parallel_volume(a, b, c, r)));
        for &(r, v) in &samples {
            assert!((body.steiner_volume(r) - v).abs() < 1e-9 * v);
        }
        let coef = fit_cubic(samples);
        assert!((coef[0] - body.volume()).abs() < 1e-7);
        assert!((coef[1] - body.perimeter()).abs() < 1e-7);
        assert!((coef[2] / 3.0 - body.quermass_w2()).abs() < 1e-7);
        assert!((coef[3] - 4.0 * PI / 3.0).abs() < 1e-7);
    }
}

#[test]
fn fine_polygon_erosion_rate_is_two_pi() {
    let poly = ConvexPolygon::regular(256, 1.0).unwrap();
    let prof = erosion_profile(&poly);
    for t in [0.0, 0.3, 0.7, 0.95] {
        let k = prof.perimeter_rate(t);
        assert!((k / (2.0 * PI) - 1.0).abs() < 0.01, "t = {t}: {k}");
    }
}

#[test]
fn profile_matches_explicit_erosion() {
    let poly = generate_shape("random:9:5", 0).unwrap();
    let prof = erosion_profile(&poly);
    let r = prof.inradius();
    for k in 1..10 {
        let t = r * k as f64 / 10.0;
        let inner = prof.erode(t).unwrap();
        assert!((inner.area() - prof.area(t)).abs() < 1e-10);
        assert!((inner.perimeter() - prof.perimeter(t)).abs() < 1e-10);
        // every vertex sits at distance t from the original boundary
        for v in inner.vertices() {
            assert!((poly.boundary_distance(*v) - t).abs() < 1e-9);
        }
    }
}

fn arb_poly() -> impl Strategy<Value = ConvexPolygon> {
    (3usize..14, any::<u64>()).prop_map(|(m, seed)| random_poly(m, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn erosion_semigroup(poly in arb_poly(), a in 0.05f64..0.45, b in 0.05f64..0.45) {
        let prof = erosion_profile(&poly);
        let r = prof.inradius();
        let (s, t) = (a * r, b * r);
        let twice = prof.erode(s).unwrap().erode(t).unwrap();
        prop_assert!((twice.area() - prof.area(s + t)).abs() < 1e-9);
        prop_assert!((twice.perimeter() - prof.perimeter(s + t)).abs() < 1e-9);
    }

    #[test]
    fn sqrt_area_is_concave(poly in arb_poly(), u in 0.02f64..0.9, h in 0.01f64..0.05) {
        let prof = erosion_profile(&poly);
        let r = prof.inradius();
        let (t0, t1) = (u * r, (u + h).min(0.98) * r);
        let tm = 0.5 * (t0 + t1);
        let f = |t: f64| prof.area(t).sqrt();
        prop_assert!(f(tm) >= 0.5 * (f(t0) + f(t1)) - 1e-12);
    }

    #[test]
    fn perimeter_rate_at_least_two_pi(poly in arb_poly(), u in 0.0f64..0.999) {
        let prof = erosion_profile(&poly);
        prop_assert!(prof.perimeter_rate(u * prof.inradius()) >= 2.0 * PI - 1e-9);
    }
}
