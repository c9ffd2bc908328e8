use super::{isoperimetric_deficit, BoundsError};
use crate::fem::{minimize_rayleigh_p, solve_p2_richardson, triangulate};
use crate::geom::ConvexPolygon;
use crate::radial::{solve_cached, RadialEigenpair};
use crate::transplant::{proof_chain_check, ProofChainReport, TransplantQuotient};
use serde::Serialize;
use std::f64::consts::PI;
use std::path::Path;

/// Mesh estimate of the polygon eigenvalue.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Oracle {
    /// Conforming discrete value, an upper bound of the eigenvalue.
    pub upper: f64,
    /// Richardson value at `p = 2`, else equal to `upper`.
    pub estimate: f64,
    /// Richardson band half-width, `None` when only one level is solved.
    pub error_bar: Option<f64>,
    pub level: usize,
    pub stalled: bool,
}

impl Oracle {
    pub fn two_sided(&self) -> bool {
        self.error_bar.is_some()
    }

    pub fn lower(&self) -> Option<f64> {
        self.error_bar.map(|b| self.estimate - b)
    }

    pub fn compute(poly: &ConvexPolygon, p: f64, beta: f64, level: usize) -> Result<Self, BoundsError> {
        if p == 2.0 && level >= 1 {
            let e = solve_p2_richardson(poly, beta, level)?;
            let r = e.richardson_estimate.expect("attached by solve_p2_richardson");
            Ok(Self { upper: e.lambda_h, estimate: r.value, error_bar: Some(r.error_bar), level, stalled: false })
        } else {
            let e = minimize_rayleigh_p(&triangulate(poly, level), p, beta, 400)?;
            Ok(Self { upper: e.lambda_h, estimate: e.lambda_h, error_bar: None, level, stalled: e.stalled })
        }
    }
}

/// Everything the planar checks need about one `(shape, p, beta)`.
#[derive(Debug, Clone)]
pub struct Case {
    pub shape: String,
    pub poly: ConvexPolygon,
    pub p: f64,
    pub beta: f64,
    pub area: f64,
    pub perimeter: f64,
    /// Area of the perimeter-matched disk.
    pub ball_area: f64,
    /// `1 - |Omega| / |Omega*|`.
    pub deficit: f64,
    pub pair: RadialEigenpair,
    pub oracle: Oracle,
    pub transplant: Option<TransplantQuotient>,
    pub chain: Option<ProofChainReport>,
}

impl Case {
    pub fn prepare(shape: &str, poly: &ConvexPolygon, p: f64, beta: f64, level: usize) -> Result<Self, BoundsError> {
        Self::prepare_cached(shape, poly, p, beta, level, None)
    }

    /// As [`Case::prepare`], reading and storing the ball solve in `cache`.
    pub fn prepare_cached(
        shape: &str,
        poly: &ConvexPolygon,
        p: f64,
        beta: f64,
        level: usize,
        cache: Option<&Path>,
    ) -> Result<Self, BoundsError> {
        if !(p > 1.0 && p.is_finite()) || !beta.is_finite() {
            return Err(BoundsError::Domain(format!("need p > 1 and finite beta, got p = {p}, beta = {beta}")));
        }
        let area = poly.area();
        let perimeter = poly.perimeter();
        let radius = perimeter / (2.0 * PI);
        let pair = solve_cached(cache, 2, p, Some(beta), radius)?;
        let oracle = Oracle::compute(poly, p, beta, level)?;
        let chain = if beta != 0.0 { proof_chain_check(poly, &pair).ok() } else { None };
        Ok(Self {
            shape: shape.to_string(),
            poly: poly.clone(),
            p,
            beta,
            area,
            perimeter,
            ball_area: PI * radius * radius,
            deficit: isoperimetric_deficit(2, area, perimeter).max(0.0),
            transplant: chain.as_ref().map(|c| c.quotient.clone()),
            pair,
            oracle,
            chain,
        })
    }

    /// `|Omega*| - |Omega|`.
    pub fn deficit_m(&self) -> f64 {
        (self.ball_area - self.area).max(0.0)
    }

    /// Smallest certified upper bound of the polygon eigenvalue: the mesh
    /// value or the transplanted quotient, both Rayleigh quotients of
    /// admissible functions.
    pub fn lambda_upper(&self) -> f64 {
        match &self.transplant {
            Some(q) if q.quotient.is_finite() => self.oracle.upper.min(q.quotient),
            _ => self.oracle.upper,
        }
    }

    pub fn lambda_ball(&self) -> f64 {
        self.pair.lambda
    }
}
