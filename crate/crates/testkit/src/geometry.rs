//! Brute-force planar geometry and a quadrature-based parallel-body volume.

use crate::quadrature::adaptive_simpson;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub type Pt = (f64, f64);

pub fn point_in_convex(poly: &[Pt], p: Pt) -> bool {
    let n = poly.len();
    (0..n).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0
    })
}

fn bbox(poly: &[Pt]) -> (f64, f64, f64, f64) {
    poly.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(x0, x1, y0, y1), &(x, y)| (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
    )
}

/// Monte-Carlo area estimate with its one-sigma standard error.
pub fn monte_carlo_area(poly: &[Pt], samples: usize, seed: u64) -> (f64, f64) {
    let (x0, x1, y0, y1) = bbox(poly);
    let box_area = (x1 - x0) * (y1 - y0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples)
        .filter(|_| {
            let p = (rng.gen_range(x0..x1), rng.gen_range(y0..y1));
            point_in_convex(poly, p)
        })
        .count();
    let frac = hits as f64 / samples as f64;
    let se = box_area * (frac * (1.0 - frac) / samples as f64).sqrt();
    (box_area * frac, se)
}

/// Sample `per_edge` points on every edge of the polygon boundary.
pub fn boundary_samples(poly: &[Pt], per_edge: usize) -> Vec<Pt> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n * per_edge);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        for k in 0..per_edge {
            let s = k as f64 / per_edge as f64;
            out.push((a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1)));
        }
    }
    out
}

fn dist_point_segment(p: Pt, a: Pt, b: Pt) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    let (qx, qy) = (a.0 + s * dx, a.1 + s * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Two-sided Hausdorff distance between a convex polygon and the disk
/// `B_r(center)`, computed from boundary point clouds.
///
/// Distances are measured point-to-set: disk samples against polygon edges,
/// polygon samples against the exact circle. For convex bodies the Hausdorff
/// distance of the sets equals that of their boundaries.
pub fn hausdorff_polygon_disk(poly: &[Pt], center: Pt, r: f64, samples: usize) -> f64 {
    let n = poly.len();
    let mut worst: f64 = 0.0;
    // polygon boundary -> disk (distance to the set, so inside points count 0)
    for &p in &boundary_samples(poly, samples / n + 1) {
        let d = ((p.0 - center.0).powi(2) + (p.1 - center.1).powi(2)).sqrt();
        worst = worst.max(d - r);
    }
    // disk boundary -> polygon
    for k in 0..samples {
        let th = 2.0 * PI * k as f64 / samples as f64;
        let q = (center.0 + r * th.cos(), center.1 + r * th.sin());
        let d = if point_in_convex(poly, q) {
            0.0
        } else {
            (0..n)
                .map(|i| dist_point_segment(q, poly[i], poly[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        };
        worst = worst.max(d);
    }
    worst
}

/// Support function of a point set in direction `theta`.
pub fn support(points: &[Pt], theta: f64) -> f64 {
    let (c, s) = (theta.cos(), theta.sin());
    points
        .iter()
        .map(|p| p.0 * c + p.1 * s)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `sup_theta |h(theta) - x.u(theta) - r|` from 4096 uniform samples with
/// three rounds of golden-section refinement around the top eight samples.
pub fn sampled_support_deviation(poly: &[Pt], center: Pt, r: f64) -> f64 {
    let f = |th: f64| (support(poly, th) - center.0 * th.cos() - center.1 * th.sin() - r).abs();
    let m = 4096;
    let h = 2.0 * PI / m as f64;
    let mut vals: Vec<(f64, f64)> = (0..m).map(|k| (k as f64 * h, f(k as f64 * h))).collect();
    vals.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let mut best = vals[0].1;
    for &(th0, _) in vals.iter().take(8) {
        let (mut lo, mut hi) = (th0 - h, th0 + h);
        for _round in 0..3 {
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let (mut a, mut b) = (lo, hi);
            let mut c = b - g * (b - a);
            let mut d = a + g * (b - a);
            for _ in 0..60 {
                if f(c) > f(d) {
                    b = d;
                } else {
                    a = c;
                }
                c = b - g * (b - a);
                d = a + g * (b - a);
            }
            let mid = 0.5 * (a + b);
            best = best.max(f(mid));
            let w = 0.25 * (hi - lo);
            lo = mid - w;
            hi = mid + w;
        }
    }
    best
}

/// Area of `poly ∩ B_r(center)` on a fine polar grid (midpoint rule in the
/// angle, exact radial extent per ray). Converges like `O(1/rays^2)`.
pub fn polar_disk_overlap(poly: &[Pt], center: Pt, r: f64, rays: usize) -> f64 {
    let n = poly.len();
    let mut area = 0.0;
    for k in 0..rays {
        let th = 2.0 * PI * (k as f64 + 0.5) / rays as f64;
        let (c, s) = (th.cos(), th.sin());
        // exit distance of the ray from `center` through the polygon
        // (center assumed inside)
        let mut t_exit = f64::INFINITY;
        for i in 0..n {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            let (ex, ey) = (b.0 - a.0, b.1 - a.1);
            let len = (ex * ex + ey * ey).sqrt();
            let (nx, ny) = (ey / len, -ex / len);
            let denom = nx * c + ny * s;
            if denom > 0.0 {
                let t = (nx * (a.0 - center.0) + ny * (a.1 - center.1)) / denom;
                t_exit = t_exit.min(t);
            }
        }
        let rho = t_exit.min(r);
        area += 0.5 * rho * rho;
    }
    area * 2.0 * PI / rays as f64
}

/// Volume of the outer parallel body `{x : dist(x, box) <= rho}` of the box
/// `[0,a] x [0,b] x [0,c]`, by two nested adaptive Simpson integrations of
/// the exact `z`-extent. Independent of any Steiner-type closed form.
///
/// Both integrals use a sine substitution across the rounded part so the
/// square-root edges of the integrand become smooth.
pub fn box_parallel_volume(a: f64, b: f64, c: f64, rho: f64) -> f64 {
    let (ha, hb) = (0.5 * a, 0.5 * b);
    // section of the quadrant at lateral overshoot dx >= 0 past the x-face
    let section = |dx: f64| -> f64 {
        let s = (rho * rho - dx * dx).max(0.0).sqrt();
        // flat part: |y| <= hb, z-extent c + 2 s
        let flat = hb * (c + 2.0 * s);
        // rounded part: y = hb + s sin(phi)
        let round = adaptive_simpson(
            &|phi: f64| (c + 2.0 * s * phi.cos()) * s * phi.cos(),
            0.0,
            0.5 * PI,
            1e-14,
        );
        flat + round
    };
    let core = ha * section(0.0);
    let cap = adaptive_simpson(
        &|psi: f64| section(rho * psi.sin()) * rho * psi.cos(),
        0.0,
        0.5 * PI,
        1e-13,
    );
    4.0 * (core + cap)
}

/// Fit the cubic `c0 + c1 rho + c2 rho^2 + c3 rho^3` through four samples.
pub fn fit_cubic(samples: [(f64, f64); 4]) -> [f64; 4] {
    // Gaussian elimination on the 4x4 Vandermonde system.
    let mut m = [[0.0f64; 5]; 4];
    for (i, &(x, y)) in samples.iter().enumerate() {
        m[i] = [1.0, x, x * x, x * x * x, y];
    }
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        for row in 0..4 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..5 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    [m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]]
}

/// A random convex polygon: sorted random angles on a radially perturbed
/// circle, kept only when strictly convex.
pub fn random_convex_polygon(m: usize, seed: u64) -> Vec<Pt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Pt> = angles
            .iter()
            .map(|&t| {
                let rad = 1.0 + rng.gen_range(-0.15..0.15);
                (rad * t.cos(), rad * t.sin())
            })
            .collect();
        let convex = (0..m).all(|i| {
            let a = pts[i];
            let b = pts[(i + 1) % m];
            let c = pts[(i + 2) % m];
            let cross = (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0);
            cross > 1e-3
        });
        if convex {
            return pts;
        }
    }
}
