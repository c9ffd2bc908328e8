use super::{build_g, Branch, TransplantError, TransplantMap};
use crate::geom::{erosion_profile, ConvexPolygon, ErosionProfile};
use crate::numerics::quad::integrate_pieces;
use crate::numerics::{conjugate, phi, rel_diff};
use crate::radial::{level_speed, RadialEigenpair};
use serde::Serialize;

/// Rayleigh quotient of the transplanted test function.
#[derive(Debug, Clone, Serialize)]
pub struct TransplantQuotient {
    /// `int |grad u|^p`.
    pub dirichlet_energy: f64,
    /// `beta int_{dOmega} u^p`.
    pub boundary_term: f64,
    /// `int u^p`.
    pub mass: f64,
    pub quotient: f64,
    pub branch: Branch,
    /// True when the inradius is below the ball radius, so `u` only sweeps
    /// part of the ball's level range.
    pub truncated: bool,
    /// Range of `u` over the polygon.
    pub u_range: (f64, f64),
    pub inradius: f64,
    /// The same energy and mass integrated in the distance variable.
    pub energy_distance_route: f64,
    pub mass_distance_route: f64,
}

/// Transplant the ball eigenfunction onto `poly`. The perimeters must
/// agree to `1e-9` relative.
pub fn transplant_quotient(poly: &ConvexPolygon, pair: &RadialEigenpair) -> Result<TransplantQuotient, TransplantError> {
    if pair.dim != 2 {
        return Err(TransplantError::UnsupportedPair);
    }
    let (pp, pb) = (poly.perimeter(), pair.ball_perimeter());
    if rel_diff(pp, pb) > 1e-9 {
        return Err(TransplantError::PerimeterMismatch { polygon: pp, ball: pb });
    }
    let map = build_g(level_speed(pair)?, Branch::of(pair)?)?;
    quotient_from_profile(&erosion_profile(poly), pair, &map)
}

/// Quotient against an arbitrary erosion profile (e.g. the exact disk).
pub fn quotient_from_profile(
    profile: &ErosionProfile,
    pair: &RadialEigenpair,
    map: &TransplantMap,
) -> Result<TransplantQuotient, TransplantError> {
    let r_in = profile.inradius();
    let big_r = pair.radius;
    if r_in < 1e-9 * big_r {
        return Err(TransplantError::Degenerate { inradius: r_in });
    }
    let area = profile.area(0.0);
    let perim = profile.perimeter(0.0);
    let p = pair.p;
    let beta = pair.beta();
    let sp = map.speed();
    let branch = map.branch();
    let depth = r_in.min(map.max_distance());
    let u_edge = map.boundary_level();
    let u_deep = map.level_of_distance(depth);
    let (t_lo, t_hi) = if u_edge <= u_deep { (u_edge, u_deep) } else { (u_deep, u_edge) };

    // integrate over levels in the substituted variable s, |t - t_c| = s^m
    let m = sp.exponent();
    let (s_lo, s_hi) = {
        let (a, b) = (sp.sigma(t_lo), sp.sigma(t_hi));
        (a.min(b), a.max(b))
    };
    let s_breaks: Vec<f64> = profile
        .breakpoints()
        .iter()
        .filter(|&&b| b < depth)
        .map(|&b| sp.sigma(map.level_of_distance(b)))
        .collect();
    let jac = |s: f64| m * s.powf(m - 1.0);
    let tol = 1e-13;
    let energy = integrate_pieces(
        |s| {
            let t = sp.level_of(s);
            sp.speed(t).powf(p - 1.0) * profile.perimeter(map.distance_of_level(t)) * jac(s)
        },
        s_lo,
        s_hi,
        &s_breaks,
        0.0,
        tol,
    );
    let layer = integrate_pieces(
        |s| {
            let t = sp.level_of(s);
            let a = profile.area(map.distance_of_level(t));
            let measure = match branch {
                Branch::PositiveBeta => a,
                Branch::NegativeBeta => area - a,
            };
            p * t.powf(p - 1.0) * measure * jac(s)
        },
        s_lo,
        s_hi,
        &s_breaks,
        0.0,
        tol,
    );
    // {u > t} is all of Omega below the minimum of u
    let mass = t_lo.powf(p) * area + layer;
    let boundary_term = beta * u_edge.powf(p) * perim;

    // cross-check: coarea in the distance variable, |grad d| = 1
    let v = pair.profile();
    let w = pair.flux_profile();
    let q = conjugate(p);
    let d_breaks = profile.breakpoints();
    let energy_d = integrate_pieces(
        |d| phi(w.eval(big_r - d), q).abs().powf(p) * profile.perimeter(d),
        0.0,
        depth,
        &d_breaks,
        0.0,
        tol,
    );
    let mass_d = integrate_pieces(|d| v.eval(big_r - d).powf(p) * profile.perimeter(d), 0.0, depth, &d_breaks, 0.0, tol);

    Ok(TransplantQuotient {
        dirichlet_energy: energy,
        boundary_term,
        mass,
        quotient: (energy + boundary_term) / mass,
        branch,
        truncated: r_in < big_r,
        u_range: (t_lo, t_hi),
        inradius: r_in,
        energy_distance_route: energy_d,
        mass_distance_route: mass_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::solve_radial;
    use std::f64::consts::PI;

    fn disk_quotient(p: f64, beta: f64) -> (RadialEigenpair, TransplantQuotient) {
        let pair = solve_radial(2, p, beta, 1.0).unwrap();
        let map = build_g(level_speed(&pair).unwrap(), Branch::of(&pair).unwrap()).unwrap();
        let q = quotient_from_profile(&ErosionProfile::disk(1.0), &pair, &map).unwrap();
        (pair, q)
    }

    #[test]
    fn disk_reproduces_ball() {
        for &(p, beta) in &[(2.0, 1.0), (2.0, -1.0), (1.5, 1.0), (3.0, -1.0), (1.5, -3.0), (3.0, 4.0)] {
            let (pair, q) = disk_quotient(p, beta);
            assert!(rel_diff(q.dirichlet_energy, pair.grad_norm_p) < 1e-8, "{p} {beta} energy");
            assert!(rel_diff(q.mass, pair.lp_norm_p) < 1e-8, "{p} {beta} mass");
            assert!(rel_diff(q.quotient, pair.lambda) < 1e-8, "{p} {beta} {} {}", q.quotient, pair.lambda);
            assert!(rel_diff(q.energy_distance_route, pair.grad_norm_p) < 1e-8);
            assert!(rel_diff(q.mass_distance_route, pair.lp_norm_p) < 1e-8);
        }
    }

    #[test]
    fn boundary_term_uses_edge_value() {
        let (pair, q) = disk_quotient(2.0, 1.0);
        assert!(rel_diff(q.boundary_term, pair.v_min.powi(2) * 2.0 * PI) < 1e-14);
        let (pair, q) = disk_quotient(2.0, -1.0);
        assert!(rel_diff(q.boundary_term, -pair.v_max.powi(2) * 2.0 * PI) < 1e-14);
    }

    #[test]
    fn perimeter_mismatch() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        let pair = solve_radial(2, 2.0, 1.0, 1.0).unwrap();
        assert!(matches!(transplant_quotient(&sq, &pair), Err(TransplantError::PerimeterMismatch { .. })));
    }

    #[test]
    fn square_routes_agree() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap().with_perimeter(2.0 * PI);
        for &beta in &[1.0, -1.0] {
            let pair = solve_radial(2, 2.0, beta, 1.0).unwrap();
            let q = transplant_quotient(&sq, &pair).unwrap();
            assert!(q.truncated);
            assert!(rel_diff(q.dirichlet_energy, q.energy_distance_route) < 1e-8);
            assert!(rel_diff(q.mass, q.mass_distance_route) < 1e-8);
        }
    }
}
