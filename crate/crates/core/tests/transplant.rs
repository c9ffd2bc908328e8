use proptest::prelude::*;
use robin_bounds::fem::solve_p2_richardson;
use robin_bounds::geom::ConvexPolygon;
use robin_bounds::radial::{level_speed, solve_radial};
use robin_bounds::shapes::generate_shape;
use robin_bounds::transplant::{build_g, proof_chain_check, transplant_quotient, Branch};
use std::f64::consts::PI;

fn ball_for(poly: &ConvexPolygon, p: f64, beta: f64) -> robin_bounds::RadialEigenpair {
    solve_radial(2, p, beta, poly.perimeter() / (2.0 * PI)).unwrap()
}

#[test]
fn fine_polygon_quotient_is_near_the_ball() {
    let poly = ConvexPolygon::regular(256, 1.0).unwrap();
    for p in [1.5, 2.0, 3.0] {
        for beta in [-1.0, 1.0] {
            let pair = ball_for(&poly, p, beta);
            let q = transplant_quotient(&poly, &pair).unwrap();
            let rel = (q.quotient - pair.lambda).abs() / pair.lambda.abs();
            assert!(rel < 5e-3, "p {p} beta {beta}: {} vs {}", q.quotient, pair.lambda);
        }
    }
}

#[test]
fn quotient_bounds_the_mesh_eigenvalue_from_above() {
    // both are values of the Rayleigh quotient on admissible functions; the
    // Richardson value sits close to the minimum
    for spec in ["regular:4", "regular:6", "rect:2:1"] {
        let poly = generate_shape(spec, 0).unwrap();
        for beta in [-1.0, 1.0] {
            let pair = ball_for(&poly, 2.0, beta);
            let q = transplant_quotient(&poly, &pair).unwrap();
            let fem = solve_p2_richardson(&poly, beta, 3).unwrap();
            let r = fem.richardson_estimate.unwrap();
            assert!(q.quotient >= r.lower() - 1e-9, "{spec} beta {beta}: {} < {}", q.quotient, r.value);
            if beta < 0.0 {
                assert!(q.quotient <= pair.lambda + 1e-9, "{spec}: transplant above the ball");
            }
        }
    }
}

#[test]
fn energy_and_mass_routes_agree() {
    for spec in ["regular:3", "rect:3:1", "random:8:4"] {
        let poly = generate_shape(spec, 0).unwrap();
        for (p, beta) in [(2.0, -1.0), (1.5, 2.0), (3.0, -0.5)] {
            let q = transplant_quotient(&poly, &ball_for(&poly, p, beta)).unwrap();
            assert!((q.dirichlet_energy - q.energy_distance_route).abs() < 1e-7 * q.dirichlet_energy.abs().max(1.0));
            assert!((q.mass - q.mass_distance_route).abs() < 1e-7 * q.mass);
        }
    }
}

#[test]
fn chain_holds_on_the_corpus() {
    let mut specs = vec!["regular:4".to_string(), "regular:6".into(), "rect:2:1".into()];
    specs.extend((1..=3).map(|s| format!("random:7:{s}")));
    for spec in &specs {
        let poly = generate_shape(spec, 0).unwrap();
        for beta in [-1.0, 1.0] {
            let chain = proof_chain_check(&poly, &ball_for(&poly, 2.0, beta)).unwrap();
            assert_eq!(chain.levels.len(), 64);
            assert!(chain.holds, "{spec} beta {beta}: {chain:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn g_is_monotone_and_inverts(p in 1.3f64..3.5, beta in prop_oneof![-4.0f64..-0.05, 0.05f64..4.0], r in 0.3f64..2.0) {
        let pair = solve_radial(2, p, beta, r).unwrap();
        let branch = Branch::of(&pair).unwrap();
        let map = build_g(level_speed(&pair).unwrap(), branch).unwrap();
        let dmax = map.max_distance();
        let ds: Vec<f64> = (0..=40).map(|k| dmax * k as f64 / 40.0).collect();
        let gs: Vec<f64> = ds.iter().map(|&d| map.g(d)).collect();
        prop_assert!(gs.windows(2).all(|w| w[1] >= w[0] - 1e-12), "G not monotone");
        prop_assert!((map.level_of_distance(0.0) - map.boundary_level()).abs() < 1e-9 * map.boundary_level().abs().max(1.0));
        for (&d, &l) in ds.iter().zip(&gs).skip(1).take(38) {
            prop_assert!((map.g_inverse(l) - d).abs() < 1e-6 * dmax);
        }
    }
}
