use super::{fraenkel_asymmetry, hausdorff_to_ball, ConvexPolygon, Point};
use serde::Serialize;
use std::f64::consts::PI;

/// Isoperimetric deficits and asymmetry indices of a polygon.
#[derive(Debug, Clone, Serialize)]
pub struct AsymmetryReport {
    /// `P(E) - P(E#)`, with `E#` the disk of equal area.
    pub deficit_d: f64,
    /// `|E*| - |E|`, with `E*` the disk of equal perimeter.
    pub deficit_m: f64,
    pub hausdorff_star: f64,
    pub hausdorff_sharp: f64,
    pub fraenkel: f64,
    pub center_star: Point,
    pub center_sharp: Point,
    pub center_fraenkel: Point,
}

pub fn asymmetry_report(poly: &ConvexPolygon) -> AsymmetryReport {
    let a = poly.area();
    let p = poly.perimeter();
    let r_star = p / (2.0 * PI);
    let r_sharp = (a / PI).sqrt();
    let (hs, cs) = hausdorff_to_ball(poly, r_star);
    let (hh, ch) = hausdorff_to_ball(poly, r_sharp);
    let (alpha, cf) = fraenkel_asymmetry(poly);
    AsymmetryReport {
        deficit_d: (p - 2.0 * (PI * a).sqrt()).max(0.0),
        deficit_m: (p * p / (4.0 * PI) - a).max(0.0),
        hausdorff_star: hs,
        hausdorff_sharp: hh,
        fraenkel: alpha.max(0.0),
        center_star: cs,
        center_sharp: ch,
        center_fraenkel: cf,
    }
}
