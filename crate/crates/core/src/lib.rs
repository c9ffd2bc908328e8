//! Verification toolkit for sharp Robin p-Laplacian eigenvalue bounds on
//! convex sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: convex polygons, inner parallel bodies, quermassintegrals of
//!   analytic 3D bodies, Hausdorff and Fraenkel asymmetry.
//! - [`radial`]: first Robin (and Dirichlet) eigenpairs of the p-Laplacian on
//!   balls by shooting, plus the ball-side constants.
//! - [`transplant`]: test functions `u = G(d(x))` built from a ball profile
//!   and the distance to the boundary, with their Rayleigh quotients.
//! - [`fem`]: independent P1 finite-element oracle for the eigenvalue of a
//!   polygon.
//! - [`bounds`]: the inequalities themselves, as reports with slacks.
//! - [`shapes`]: named polygon generators used by the CLI and the tests.

pub mod bounds;
pub mod fem;
pub mod geom;
pub mod numerics;
pub mod radial;
pub mod shapes;
pub mod transplant;

pub use bounds::{Status, TheoremId, TheoremReport};
pub use fem::{DiscreteEigenpair, Mesh};
pub use geom::{AnalyticBody3D, AsymmetryReport, BallGeometry, ConvexPolygon, ErosionProfile, Point};
pub use radial::{Boundary, LevelSpeed, RadialEigenpair};
pub use transplant::{Branch, TransplantMap, TransplantQuotient};
