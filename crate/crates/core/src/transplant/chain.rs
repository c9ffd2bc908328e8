//! Level-by-level instances of the comparison inequalities behind the
//! transplant bounds.

use super::{build_g, quotient_from_profile, Branch, TransplantError, TransplantMap, TransplantQuotient};
use crate::geom::{erosion_profile, ConvexPolygon, ErosionProfile};
use crate::numerics::rel_diff;
use crate::radial::{level_speed, RadialEigenpair};
use serde::Serialize;
use std::f64::consts::PI;

/// Number of sampled levels.
pub const CHAIN_LEVELS: usize = 64;
const TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct LevelSlack {
    pub level: f64,
    /// `P` of the ball's level set at `t`.
    pub ball_perimeter: f64,
    /// `P` of the polygon's level set at `t`.
    pub set_perimeter: f64,
    /// `ball_perimeter - set_perimeter`, should be `>= 0`.
    pub perimeter_slack: f64,
    /// `nu - mu` at this level: ball superlevel measure minus the polygon's.
    pub nu_minus_mu: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofChainReport {
    pub branch: Branch,
    pub levels: Vec<LevelSlack>,
    /// `min_k (perimeter slack) / P`.
    pub min_perimeter_slack: f64,
    /// `min_k -((nu-mu)(t_{k+1}) - (nu-mu)(t_k)) / |Omega*|`; `>= 0` when
    /// `nu - mu` is decreasing.
    pub monotone_slack: f64,
    /// `(E* - E) / E*`.
    pub energy_slack: f64,
    /// Positive branch: `mass - (m* - v_M^p M)`; negative branch:
    /// `(m* - v_m^p M) - mass`; divided by `m*`.
    pub mass_slack: f64,
    /// Bound on the quotient implied by the energy and mass comparisons,
    /// minus the quotient, over `|lambda*|`.
    pub quotient_bound_slack: f64,
    pub quotient: TransplantQuotient,
    pub holds: bool,
}

/// Run the comparison chain for `poly` against the perimeter-matched
/// ball pair.
pub fn proof_chain_check(poly: &ConvexPolygon, pair: &RadialEigenpair) -> Result<ProofChainReport, TransplantError> {
    let (pp, pb) = (poly.perimeter(), pair.ball_perimeter());
    if rel_diff(pp, pb) > 1e-9 {
        return Err(TransplantError::PerimeterMismatch { polygon: pp, ball: pb });
    }
    let map = build_g(level_speed(pair)?, Branch::of(pair)?)?;
    proof_chain_from_profile(&erosion_profile(poly), pair, &map)
}

pub fn proof_chain_from_profile(
    profile: &ErosionProfile,
    pair: &RadialEigenpair,
    map: &TransplantMap,
) -> Result<ProofChainReport, TransplantError> {
    let q = quotient_from_profile(profile, pair, map)?;
    let branch = map.branch();
    let big_r = pair.radius;
    let area = profile.area(0.0);
    let perim = profile.perimeter(0.0);
    let ball_area = pair.ball_volume();
    let deficit_m = ball_area - area;
    let (v_m, v_big) = (pair.v_min, pair.v_max);
    let p = pair.p;

    let levels: Vec<LevelSlack> = (0..CHAIN_LEVELS)
        .map(|k| {
            let t = v_m + (k as f64 + 0.5) / CHAIN_LEVELS as f64 * (v_big - v_m);
            let s = map.distance_of_level(t);
            let r = (big_r - s).max(0.0);
            let pe = profile.perimeter(s);
            let a = profile.area(s);
            let (nu, mu) = match branch {
                Branch::PositiveBeta => (PI * r * r, a),
                Branch::NegativeBeta => (ball_area - PI * r * r, area - a),
            };
            let pbt = 2.0 * PI * r;
            LevelSlack { level: t, ball_perimeter: pbt, set_perimeter: pe, perimeter_slack: pbt - pe, nu_minus_mu: nu - mu }
        })
        .collect();
    let min_perimeter_slack = levels.iter().map(|l| l.perimeter_slack).fold(f64::INFINITY, f64::min) / perim;
    let monotone_slack = levels
        .windows(2)
        .map(|w| -(w[1].nu_minus_mu - w[0].nu_minus_mu))
        .fold(f64::INFINITY, f64::min)
        / ball_area;

    let (e_star, m_star, l_star) = (pair.grad_norm_p, pair.lp_norm_p, pair.lambda);
    let energy_slack = (e_star - q.dirichlet_energy) / e_star;
    let (mass_slack, bound) = match branch {
        Branch::PositiveBeta => {
            let lower = m_star - v_big.powf(p) * deficit_m;
            ((q.mass - lower) / m_star, l_star * m_star / lower)
        }
        Branch::NegativeBeta => {
            let upper = m_star - v_m.powf(p) * deficit_m;
            ((upper - q.mass) / m_star, l_star / (1.0 - v_m.powf(p) / m_star * deficit_m))
        }
    };
    let quotient_bound_slack = (bound - q.quotient) / l_star.abs();
    let holds = [min_perimeter_slack, monotone_slack, energy_slack, mass_slack, quotient_bound_slack]
        .iter()
        .all(|&s| s >= -TOL);
    Ok(ProofChainReport {
        branch,
        levels,
        min_perimeter_slack,
        monotone_slack,
        energy_slack,
        mass_slack,
        quotient_bound_slack,
        quotient: q,
        holds,
    })
}
