use crate::geom::{ConvexPolygon, Point};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Conforming triangulation of a convex polygon.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mesh {
    pub nodes: Vec<Point>,
    /// Counter-clockwise index triples.
    pub triangles: Vec<[usize; 3]>,
    /// Boundary edges, oriented so the domain lies to the left.
    pub boundary_edges: Vec<[usize; 2]>,
    pub refinement_level: usize,
}

/// Centroid fan refined `level` times by midpoint subdivision.
pub fn triangulate(poly: &ConvexPolygon, level: usize) -> Mesh {
    let k = poly.len();
    let mut nodes: Vec<Point> = poly.vertices().to_vec();
    nodes.push(poly.centroid());
    let c = k;
    let mut triangles: Vec<[usize; 3]> = (0..k).map(|i| [c, i, (i + 1) % k]).collect();
    let mut boundary: Vec<[usize; 2]> = (0..k).map(|i| [i, (i + 1) % k]).collect();
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, nodes: &mut Vec<Point>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let (p, q) = (nodes[a], nodes[b]);
                nodes.push([0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]);
                nodes.len() - 1
            })
        };
        let mut next = Vec::with_capacity(4 * triangles.len());
        for &[a, b, c] in &triangles {
            let ab = midpoint(a, b, &mut nodes);
            let bc = midpoint(b, c, &mut nodes);
            let ca = midpoint(c, a, &mut nodes);
            next.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        triangles = next;
        boundary = boundary
            .iter()
            .flat_map(|&[a, b]| {
                let m = mid[&(a.min(b), a.max(b))];
                [[a, m], [m, b]]
            })
            .collect();
    }
    Mesh { nodes, triangles, boundary_edges: boundary, refinement_level: level }
}

impl Mesh {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        let (p, q, r) = (self.nodes[a], self.nodes[b], self.nodes[c]);
        0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.boundary_edges[e];
        let (p, q) = (self.nodes[a], self.nodes[b]);
        (q[0] - p[0]).hypot(q[1] - p[1])
    }

    pub fn area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    pub fn boundary_length(&self) -> f64 {
        (0..self.boundary_edges.len()).map(|e| self.edge_length(e)).sum()
    }

    /// Longest edge over all triangles.
    pub fn mesh_size(&self) -> f64 {
        let d = |a: usize, b: usize| {
            let (p, q) = (self.nodes[a], self.nodes[b]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        };
        self.triangles
            .iter()
            .map(|&[a, b, c]| d(a, b).max(d(b, c)).max(d(c, a)))
            .fold(0.0, f64::max)
    }

    /// Gradients of the three hat functions on triangle `t`.
    pub(crate) fn hat_gradients(&self, t: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.triangles[t];
        let (p, q, r) = (self.nodes[a], self.nodes[b], self.nodes[c]);
        let twice = 2.0 * self.triangle_area(t);
        [
            [(q[1] - r[1]) / twice, (r[0] - q[0]) / twice],
            [(r[1] - p[1]) / twice, (p[0] - r[0]) / twice],
            [(p[1] - q[1]) / twice, (q[0] - p[0]) / twice],
        ]
    }

    /// Piecewise-linear interpolant of `f` at the nodes.
    pub fn interpolate(&self, f: impl Fn(Point) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}
