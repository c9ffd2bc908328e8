//! Convex geometry: planar polygons, balls, analytic 3D bodies, inner
//! parallel bodies and asymmetry indices.

mod asymmetry;
mod ball;
mod body3d;
mod erosion;
mod fraenkel;
mod hausdorff;
mod polygon;

pub use asymmetry::{asymmetry_report, AsymmetryReport};
pub use ball::BallGeometry;
pub use body3d::{quermass_w2, AnalyticBody3D, RegularSolid};
pub use erosion::{erosion_profile, ErosionProfile, ErosionSegment};
pub use fraenkel::{disk_overlap, fraenkel_asymmetry};
pub use hausdorff::{hausdorff_at, hausdorff_to_ball};
pub use polygon::{measure_polygon, ConvexPolygon, PolygonFile};

use thiserror::Error;

/// A point in the plane.
pub type Point = [f64; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices are listed clockwise")]
    Clockwise,
    #[error("polygon is degenerate or not strictly convex at vertex {index}")]
    NotConvex { index: usize },
    #[error("vertex {index} duplicates its predecessor")]
    DuplicateVertex { index: usize },
    #[error("non-finite coordinate at vertex {index}")]
    NonFinite { index: usize },
    #[error("erosion depth {t} is outside [0, inradius = {inradius})")]
    EmptyBody { t: f64, inradius: f64 },
    #[error("unsupported body: {0}")]
    UnsupportedBody(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[inline]
pub(crate) fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}
