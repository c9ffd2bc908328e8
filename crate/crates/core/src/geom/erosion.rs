//! Inner parallel bodies `{x : d(x) > t}` of a convex polygon by an exact
//! event sweep over inward-offset edge lines.

use super::{cross, dot, norm, sub, ConvexPolygon, GeomError, Point};
use serde::Serialize;
use std::f64::consts::PI;

/// Between two events the eroded polygon keeps the same edge lines, so
/// `P(t0 + s) = P0 - kappa s` and `|Omega_{t0+s}| = A0 - P0 s + kappa s^2 / 2`.
#[derive(Debug, Clone, Serialize)]
pub struct ErosionSegment {
    pub t0: f64,
    pub t1: f64,
    pub perimeter0: f64,
    pub area0: f64,
    /// `-dP/dt = 2 sum cot(theta_i / 2)` over interior angles.
    pub kappa: f64,
    /// Indices into the original polygon's edge lines still present.
    #[serde(skip)]
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErosionProfile {
    segments: Vec<ErosionSegment>,
    inradius: f64,
    #[serde(skip)]
    base_lines: Vec<(Point, f64)>,
}

fn intersect(a: (Point, f64), b: (Point, f64)) -> Point {
    let det = cross(a.0, b.0);
    [(a.1 * b.0[1] - b.1 * a.0[1]) / det, (a.0[0] * b.1 - b.0[0] * a.1) / det]
}

/// Turning angle from normal `a` to normal `b`, in `(0, pi)` for a convex
/// corner; `tan(turn / 2) = cot(interior / 2)`.
fn turn(a: Point, b: Point) -> f64 {
    cross(a, b).atan2(dot(a, b))
}

fn shoelace(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>()
}

fn vertices_at(base: &[(Point, f64)], act: &[usize], t: f64) -> Vec<Point> {
    let m = act.len();
    (0..m)
        .map(|j| {
            let a = base[act[(j + m - 1) % m]];
            let b = base[act[j]];
            intersect((a.0, a.1 - t), (b.0, b.1 - t))
        })
        .collect()
}

/// Build the full erosion profile of `poly`.
pub fn erosion_profile(poly: &ConvexPolygon) -> ErosionProfile {
    let base = poly.lines();
    let scale = poly.diameter();
    let tol_t = 1e-10 * scale;
    let area_scale = scale * scale;
    let mut act: Vec<usize> = (0..base.len()).collect();
    let mut t = 0.0;
    let mut segments = Vec::new();
    loop {
        let m = act.len();
        let verts = vertices_at(&base, &act, t);
        // vertex j sits between line act[j-1] and act[j]
        let half_tan: Vec<f64> = (0..m)
            .map(|j| (0.5 * turn(base[act[(j + m - 1) % m]].0, base[act[j]].0)).tan())
            .collect();
        let lengths: Vec<f64> = (0..m).map(|j| norm(sub(verts[(j + 1) % m], verts[j]))).collect();
        let rates: Vec<f64> = (0..m).map(|j| half_tan[j] + half_tan[(j + 1) % m]).collect();
        let p0: f64 = lengths.iter().sum();
        let a0 = shoelace(&verts);
        let kappa: f64 = 2.0 * half_tan.iter().sum::<f64>();
        let vanish: Vec<f64> = (0..m).map(|j| lengths[j] / rates[j]).collect();
        // collapse always happens at an edge event: to a point every edge
        // vanishes, to a segment all edges but two antiparallel ones do
        let tau = vanish.iter().cloned().fold(f64::INFINITY, f64::min);
        segments.push(ErosionSegment {
            t0: t,
            t1: t + tau,
            perimeter0: p0,
            area0: a0,
            kappa,
            lines: act.clone(),
        });
        t += tau;
        let keep: Vec<usize> = (0..m).filter(|&j| vanish[j] > tau + tol_t).map(|j| act[j]).collect();
        let bounded = keep.len() >= 3
            && (0..keep.len()).all(|j| {
                let a = base[keep[(j + keep.len() - 1) % keep.len()]].0;
                let b = base[keep[j]].0;
                turn(a, b) < PI - 1e-12
            });
        if !bounded || a0 - p0 * tau + 0.5 * kappa * tau * tau <= 1e-14 * area_scale {
            break;
        }
        act = keep;
    }
    // the last segment ends at the inradius
    ErosionProfile { inradius: t, segments, base_lines: base }
}

impl ErosionProfile {
    /// Exact profile of the disk of radius `r`: a single segment with
    /// `kappa = 2 pi`.
    pub fn disk(r: f64) -> Self {
        Self {
            segments: vec![ErosionSegment {
                t0: 0.0,
                t1: r,
                perimeter0: 2.0 * PI * r,
                area0: PI * r * r,
                kappa: 2.0 * PI,
                lines: Vec::new(),
            }],
            inradius: r,
            base_lines: Vec::new(),
        }
    }

    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    pub fn segments(&self) -> &[ErosionSegment] {
        &self.segments
    }

    /// Interior event times (edge disappearances), excluding 0 and `r_Omega`.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.t0).collect()
    }

    fn segment(&self, t: f64) -> &ErosionSegment {
        let i = self.segments.partition_point(|s| s.t1 <= t);
        &self.segments[i.min(self.segments.len() - 1)]
    }

    /// `P(Omega_t)`; zero for `t >= r_Omega`.
    pub fn perimeter(&self, t: f64) -> f64 {
        if t >= self.inradius {
            return 0.0;
        }
        let s = self.segment(t.max(0.0));
        (s.perimeter0 - s.kappa * (t.max(0.0) - s.t0)).max(0.0)
    }

    /// `|Omega_t|`; zero for `t >= r_Omega`.
    pub fn area(&self, t: f64) -> f64 {
        if t >= self.inradius {
            return 0.0;
        }
        let s = self.segment(t.max(0.0));
        let u = t.max(0.0) - s.t0;
        (s.area0 - s.perimeter0 * u + 0.5 * s.kappa * u * u).max(0.0)
    }

    /// `-dP/dt` on the segment containing `t` (right derivative).
    pub fn perimeter_rate(&self, t: f64) -> f64 {
        self.segment(t).kappa
    }

    /// The inner parallel body at depth `t`.
    pub fn erode(&self, t: f64) -> Result<ConvexPolygon, GeomError> {
        if !(t >= 0.0 && t < self.inradius) || self.base_lines.is_empty() {
            return Err(GeomError::EmptyBody { t, inradius: self.inradius });
        }
        let s = self.segment(t);
        let v = vertices_at(&self.base_lines, &s.lines, t);
        let tol = 1e-12 * self.segments[0].perimeter0;
        let mut out: Vec<Point> = Vec::with_capacity(v.len());
        for p in v {
            if out.last().is_none_or(|q| norm(sub(p, *q)) > tol) {
                out.push(p);
            }
        }
        while out.len() > 1 && norm(sub(out[0], *out.last().unwrap())) <= tol {
            out.pop();
        }
        if out.len() < 3 {
            return Err(GeomError::EmptyBody { t, inradius: self.inradius });
        }
        Ok(ConvexPolygon::trusted(out))
    }
}

impl ConvexPolygon {
    /// Inner parallel body at depth `t` (convenience over the profile).
    pub fn erode(&self, t: f64) -> Result<ConvexPolygon, GeomError> {
        erosion_profile(self).erode(t)
    }
}
