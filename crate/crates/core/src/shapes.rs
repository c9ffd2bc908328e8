//! Named polygon generators: `regular:k`, `rect:a:b`, `random:m[:seed]`.

use crate::geom::{ConvexPolygon, GeomError, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapeError {
    #[error("cannot parse shape spec `{0}`")]
    Parse(String),
    #[error("random {m}-gon not found after {attempts} draws")]
    Exhausted { m: usize, attempts: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

const MAX_DRAWS: usize = 200_000;

/// `regular:k` has unit circumradius, `rect:a:b` is centred at the origin,
/// `random:m` is the hull of `m` seeded points in the annulus
/// `0.6 <= |x| <= 1`, redrawn until every point is a hull vertex. A seed in
/// the spec overrides `seed`.
pub fn generate_shape(spec: &str, seed: u64) -> Result<ConvexPolygon, ShapeError> {
    let bad = || ShapeError::Parse(spec.to_string());
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite() && *v > 0.0).ok_or_else(bad);
    let count = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["regular", k] => {
            let k = count(k)?;
            if k < 3 {
                return Err(bad());
            }
            Ok(ConvexPolygon::regular(k, 1.0)?)
        }
        ["rect", a, b] => Ok(ConvexPolygon::rectangle(num(a)?, num(b)?)?),
        ["random", m] => random_polygon(count(m)?, seed),
        ["random", m, s] => random_polygon(count(m)?, s.trim().parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

fn random_polygon(m: usize, seed: u64) -> Result<ConvexPolygon, ShapeError> {
    if m < 3 {
        return Err(ShapeError::Parse(format!("random:{m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let pts: Vec<Point> = (0..m)
            .map(|_| {
                let t = rng.gen_range(0.0..2.0 * PI);
                let r = rng.gen_range(0.6..1.0);
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() == m {
            if let Ok(poly) = ConvexPolygon::new(hull) {
                return Ok(poly);
            }
        }
    }
    Err(ShapeError::Exhausted { m, attempts: MAX_DRAWS })
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}
