use super::{cross, dot, erosion_profile, norm, sub, GeomError, Point};
use serde::{Deserialize, Serialize};

/// On-disk polygon format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<Point>,
    #[serde(default)]
    pub name: String,
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    tolerance: f64,
}

impl ConvexPolygon {
    /// Validate and build. The convexity tolerance defaults to
    /// `1e-12 * diag^2` with `diag` the bounding-box diagonal.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|v| !v[0].is_finite() || !v[1].is_finite()) {
            return Err(GeomError::NonFinite { index: i });
        }
        let diag = bbox_diagonal(&vertices);
        Self::with_tolerance(vertices, 1e-12 * diag * diag)
    }

    pub fn with_tolerance(vertices: Vec<Point>, tolerance: f64) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        for i in 0..n {
            let a = vertices[(i + n - 1) % n];
            if norm(sub(vertices[i], a)).powi(2) <= tolerance {
                return Err(GeomError::DuplicateVertex { index: i });
            }
        }
        let turns: Vec<f64> = (0..n)
            .map(|i| {
                let a = vertices[(i + n - 1) % n];
                let b = vertices[i];
                let c = vertices[(i + 1) % n];
                cross(sub(b, a), sub(c, b))
            })
            .collect();
        if turns.iter().all(|&c| c < -tolerance) {
            return Err(GeomError::Clockwise);
        }
        if let Some(i) = turns.iter().position(|&c| c <= tolerance) {
            return Err(GeomError::NotConvex { index: i });
        }
        // all left turns but winding more than once
        let total: f64 = (0..n)
            .map(|i| {
                let a = sub(vertices[i], vertices[(i + n - 1) % n]);
                let b = sub(vertices[(i + 1) % n], vertices[i]);
                cross(a, b).atan2(dot(a, b))
            })
            .sum();
        if (total - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
            return Err(GeomError::NotConvex { index: 0 });
        }
        Ok(Self { vertices, tolerance })
    }

    /// Skip validation; used for erosion output whose convexity is known.
    pub(crate) fn trusted(vertices: Vec<Point>) -> Self {
        let diag = bbox_diagonal(&vertices);
        Self { vertices, tolerance: 1e-12 * diag * diag }
    }

    /// Regular `k`-gon with circumradius `rc`, centred at the origin, with a
    /// horizontal bottom edge.
    pub fn regular(k: usize, rc: f64) -> Result<Self, GeomError> {
        if k < 3 {
            return Err(GeomError::TooFewVertices(k));
        }
        let pi = std::f64::consts::PI;
        let start = -0.5 * pi - pi / k as f64;
        let v = (0..k)
            .map(|i| {
                let th = start + 2.0 * pi * i as f64 / k as f64;
                [rc * th.cos(), rc * th.sin()]
            })
            .collect();
        Self::new(v)
    }

    /// Axis-aligned `a x b` rectangle centred at the origin.
    pub fn rectangle(a: f64, b: f64) -> Result<Self, GeomError> {
        let (x, y) = (0.5 * a, 0.5 * b);
        Self::new(vec![[-x, -y], [x, -y], [x, y], [-x, y]])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    pub fn area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n).map(|i| cross(self.vertices[i], self.vertex(i + 1))).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|i| norm(sub(self.vertex(i + 1), self.vertices[i]))).sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.len();
        // shift to the first vertex for conditioning
        let o = self.vertices[0];
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = sub(self.vertices[i], o);
            let q = sub(self.vertex(i + 1), o);
            let c = cross(p, q);
            a2 += c;
            cx += (p[0] + q[0]) * c;
            cy += (p[1] + q[1]) * c;
        }
        [o[0] + cx / (3.0 * a2), o[1] + cy / (3.0 * a2)]
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(norm(sub(*a, *b)));
            }
        }
        d
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Supporting lines `(n_i, c_i)` with unit outward normal: the polygon is
    /// `{x : n_i . x <= c_i for all i}`; line `i` carries edge `v_i v_{i+1}`.
    pub fn lines(&self) -> Vec<(Point, f64)> {
        (0..self.len())
            .map(|i| {
                let a = self.vertices[i];
                let e = sub(self.vertex(i + 1), a);
                let l = norm(e);
                let n = [e[1] / l, -e[0] / l];
                (n, dot(n, a))
            })
            .collect()
    }

    /// Signed distance to the boundary, positive inside.
    pub fn boundary_distance(&self, x: Point) -> f64 {
        let lines = self.lines();
        let inner = lines.iter().map(|(n, c)| c - dot(*n, x)).fold(f64::INFINITY, f64::min);
        if inner >= 0.0 {
            inner
        } else {
            -self.outside_distance(x)
        }
    }

    /// Euclidean distance from `x` to the polygon (zero inside).
    pub fn outside_distance(&self, x: Point) -> f64 {
        if self.contains(x) {
            return 0.0;
        }
        (0..self.len())
            .map(|i| segment_distance(x, self.vertices[i], self.vertex(i + 1)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: Point) -> bool {
        self.lines().iter().all(|(n, c)| dot(*n, x) <= *c)
    }

    /// Support function `h(theta) = max_i v_i . (cos theta, sin theta)`.
    pub fn support(&self, theta: f64) -> f64 {
        let u = [theta.cos(), theta.sin()];
        self.vertices.iter().map(|v| dot(*v, u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn translated(&self, d: Point) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| [v[0] + d[0], v[1] + d[1]]).collect(),
            tolerance: self.tolerance,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| [s * v[0], s * v[1]]).collect(),
            tolerance: self.tolerance * s * s,
        }
    }

    /// Rescale about the centroid so that the perimeter equals `p`.
    pub fn with_perimeter(&self, p: f64) -> Self {
        let c = self.centroid();
        self.translated([-c[0], -c[1]]).scaled(p / self.perimeter())
    }

    pub fn from_file(f: &PolygonFile) -> Result<Self, GeomError> {
        Self::new(f.vertices.clone())
    }

    pub fn to_file(&self, name: &str) -> PolygonFile {
        PolygonFile { vertices: self.vertices.clone(), name: name.to_string() }
    }

    pub fn inradius(&self) -> f64 {
        erosion_profile(self).inradius()
    }
}

pub(crate) fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = sub(b, a);
    let s = (dot(sub(p, a), e) / dot(e, e)).clamp(0.0, 1.0);
    norm(sub(p, [a[0] + s * e[0], a[1] + s * e[1]]))
}

fn bbox_diagonal(v: &[Point]) -> f64 {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in v {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    norm(sub(hi, lo))
}

/// `(area, perimeter, inradius)`.
pub fn measure_polygon(poly: &ConvexPolygon) -> (f64, f64, f64) {
    (poly.area(), poly.perimeter(), poly.inradius())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_measures() {
        let sq = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let (a, p, r) = measure_polygon(&sq);
        assert!((a - 1.0).abs() < 1e-15 && (p - 4.0).abs() < 1e-15 && (r - 0.5).abs() < 1e-14);
        assert_eq!(sq.centroid(), [0.5, 0.5]);
    }

    #[test]
    fn hexagon_measures() {
        let h = ConvexPolygon::regular(6, 1.0).unwrap();
        let (a, p, r) = measure_polygon(&h);
        assert!((a - 1.5 * 3f64.sqrt()).abs() < 1e-14);
        assert!((p - 6.0).abs() < 1e-14);
        assert!((r - 0.5 * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0]]), Err(GeomError::TooFewVertices(2)));
        let cw = vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        assert_eq!(ConvexPolygon::new(cw), Err(GeomError::Clockwise));
        let collinear = vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 1.0]];
        assert_eq!(ConvexPolygon::new(collinear), Err(GeomError::NotConvex { index: 1 }));
        let dup = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        assert_eq!(ConvexPolygon::new(dup), Err(GeomError::DuplicateVertex { index: 2 }));
        let reflex = vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.2], [2.0, 1.0], [0.0, 1.0]];
        assert!(matches!(ConvexPolygon::new(reflex), Err(GeomError::NotConvex { .. })));
    }

    #[test]
    fn polygon_file_round_trip() {
        let sq = ConvexPolygon::rectangle(2.0, 1.0).unwrap();
        let s = serde_json::to_string(&sq.to_file("rect")).unwrap();
        let f: PolygonFile = serde_json::from_str(&s).unwrap();
        assert_eq!(f.name, "rect");
        assert_eq!(ConvexPolygon::from_file(&f).unwrap(), sq);
    }

    #[test]
    fn boundary_distance_signs() {
        let sq = ConvexPolygon::rectangle(2.0, 2.0).unwrap();
        assert!((sq.boundary_distance([0.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((sq.boundary_distance([2.0, 2.0]) + 2f64.sqrt()).abs() < 1e-15);
        assert!((sq.boundary_distance([3.0, 0.0]) + 2.0).abs() < 1e-15);
    }
}
