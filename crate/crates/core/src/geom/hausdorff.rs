//! Hausdorff distance from a convex polygon to a disk of given radius,
//! minimised over the disk centre.
//!
//! For convex sets `d_H(K, B_r(x)) = sup_u |h_K(u) - x.u - r|`. On a polygon
//! both one-sided suprema have closed forms:
//! `sup_u (h_K(u) - x.u) = max_i |v_i - x|` and
//! `inf_u (h_K(u) - x.u)` is the inner distance `min_j (c_j - n_j . x)` when
//! `x` lies in `K` and `-dist(x, K)` otherwise.

use super::{norm, sub, ConvexPolygon, Point};
use crate::numerics::optim::golden_min;

/// `d_H(poly, B_r(center))`.
pub fn hausdorff_at(poly: &ConvexPolygon, center: Point, r: f64) -> f64 {
    let outer = poly.vertices().iter().map(|v| norm(sub(*v, center))).fold(0.0, f64::max);
    let inner = poly.boundary_distance(center);
    (outer - r).max(r - inner)
}

/// Minimise [`hausdorff_at`] over centres. The objective is convex and
/// 1-Lipschitz, so nested golden-section searches over the bounding box
/// grown by `r` locate the minimum.
pub fn hausdorff_to_ball(poly: &ConvexPolygon, r: f64) -> (f64, Point) {
    let (lo, hi) = poly.bbox();
    let scale = poly.diameter().max(r);
    let tol = 1e-11 * scale;
    let lines = poly.lines();
    let f = |x: Point| {
        let outer = poly.vertices().iter().map(|v| norm(sub(*v, x))).fold(0.0, f64::max);
        let inner = lines
            .iter()
            .map(|(n, c)| c - (n[0] * x[0] + n[1] * x[1]))
            .fold(f64::INFINITY, f64::min);
        let inner = if inner >= 0.0 { inner } else { -poly.outside_distance(x) };
        (outer - r).max(r - inner)
    };
    let inner_min = |x: f64| golden_min(|y| f([x, y]), lo[1] - r, hi[1] + r, tol);
    let (bx, _) = golden_min(|x| inner_min(x).1, lo[0] - r, hi[0] + r, tol);
    let (by, v) = inner_min(bx);
    (v, [bx, by])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_perimeter_matched() {
        let sq = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let (d, c) = hausdorff_to_ball(&sq, 2.0 / PI);
        assert!((d - (2.0 / PI - 0.5)).abs() < 1e-9, "{d}");
        assert!((hausdorff_at(&sq, [0.5, 0.5], 2.0 / PI) - d).abs() < 1e-9);
        assert!(hausdorff_at(&sq, c, 2.0 / PI) <= d + 1e-12);
    }

    #[test]
    fn translation_equivariance() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        let (d0, c0) = hausdorff_to_ball(&sq, 2.0 / PI);
        let (d1, c1) = hausdorff_to_ball(&sq.translated([5.0, 7.0]), 2.0 / PI);
        assert!((d0 - d1).abs() < 1e-9);
        // the minimiser is not unique for a square, but the shifted centre
        // must still be optimal for the shifted square
        let shifted = sq.translated([5.0, 7.0]);
        assert!(hausdorff_at(&shifted, [c0[0] + 5.0, c0[1] + 7.0], 2.0 / PI) <= d1 + 1e-9);
        assert!(hausdorff_at(&sq, [c1[0] - 5.0, c1[1] - 7.0], 2.0 / PI) <= d0 + 1e-9);
    }

    #[test]
    fn far_disk_is_penalised() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        // centre outside: the disk misses part of the square
        let d = hausdorff_at(&sq, [3.0, 0.0], 0.1);
        assert!(d > 2.9);
    }
}
