//! Exact polygon–disk overlap and the Fraenkel asymmetry.

use super::{cross, dot, sub, ConvexPolygon, Point};
use crate::numerics::optim::nelder_mead_2d;
use std::f64::consts::PI;

// Signed area of triangle (0, a, b) intersected with the disk |x| <= r.
fn triangle_disk(a: Point, b: Point, r: f64) -> f64 {
    let d = sub(b, a);
    let qa = dot(d, d);
    let qb = 2.0 * dot(a, d);
    let qc = dot(a, a) - r * r;
    let mut cuts = vec![0.0];
    let disc = qb * qb - 4.0 * qa * qc;
    if disc > 0.0 {
        let sq = disc.sqrt();
        for s in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
            if s > 0.0 && s < 1.0 {
                cuts.push(s);
            }
        }
    }
    cuts.push(1.0);
    let at = |s: f64| [a[0] + s * d[0], a[1] + s * d[1]];
    cuts.windows(2)
        .map(|w| {
            let (p, q) = (at(w[0]), at(w[1]));
            let m = at(0.5 * (w[0] + w[1]));
            if dot(m, m) <= r * r {
                0.5 * cross(p, q)
            } else {
                0.5 * r * r * cross(p, q).atan2(dot(p, q))
            }
        })
        .sum()
}

/// `|poly ∩ B_r(center)|`.
pub fn disk_overlap(poly: &ConvexPolygon, center: Point, r: f64) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| triangle_disk(sub(poly.vertex(i), center), sub(poly.vertex(i + 1), center), r))
        .sum()
}

/// Fraenkel asymmetry `min_x |Omega Δ B_r(x)| / |Omega|` with `|B_r| = |Omega|`.
/// Returns `(alpha, best centre)`.
pub fn fraenkel_asymmetry(poly: &ConvexPolygon) -> (f64, Point) {
    let a = poly.area();
    let r = (a / PI).sqrt();
    let c0 = poly.centroid();
    let (c, neg) = nelder_mead_2d(|x| -disk_overlap(poly, x, r), c0, 0.05 * r, 1e-12 * r, 2000);
    let overlap = (-neg).max(disk_overlap(poly, c0, r));
    (2.0 * (1.0 - overlap / a), c)
}
