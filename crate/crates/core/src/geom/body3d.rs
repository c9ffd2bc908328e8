//! Closed-form quermassintegrals of a few convex bodies in `R^3`.

use super::GeomError;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl RegularSolid {
    // (volume / a^3, area / a^2, edge count, dihedral angle)
    fn data(self) -> (f64, f64, f64, f64) {
        let s5 = 5f64.sqrt();
        match self {
            Self::Tetrahedron => (1.0 / (6.0 * 2f64.sqrt()), 3f64.sqrt(), 6.0, (1.0f64 / 3.0).acos()),
            Self::Cube => (1.0, 6.0, 12.0, 0.5 * PI),
            Self::Octahedron => (2f64.sqrt() / 3.0, 2.0 * 3f64.sqrt(), 12.0, (-1.0f64 / 3.0).acos()),
            Self::Dodecahedron => (
                (15.0 + 7.0 * s5) / 4.0,
                3.0 * (25.0 + 10.0 * s5).sqrt(),
                30.0,
                (-1.0 / s5).acos(),
            ),
            Self::Icosahedron => (5.0 * (3.0 + s5) / 12.0, 5.0 * 3f64.sqrt(), 30.0, (-s5 / 3.0).acos()),
        }
    }
}

/// Ball, rectangular box or regular polyhedron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnalyticBody3D {
    Ball { radius: f64 },
    Box { a: f64, b: f64, c: f64 },
    Regular { solid: RegularSolid, edge: f64 },
}

impl AnalyticBody3D {
    /// Parse `ball:R`, `box:a:b:c`, or `<solid>:edge` for the five regular
    /// solids.
    pub fn from_spec(spec: &str) -> Result<Self, GeomError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let nums: Result<Vec<f64>, _> = parts[1..].iter().map(|s| s.trim().parse::<f64>()).collect();
        let nums = nums.map_err(|_| GeomError::UnsupportedBody(spec.to_string()))?;
        if nums.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(GeomError::UnsupportedBody(spec.to_string()));
        }
        let solid = |s| Self::Regular { solid: s, edge: nums[0] };
        match (parts[0], nums.len()) {
            ("ball", 1) => Ok(Self::Ball { radius: nums[0] }),
            ("box", 3) => Ok(Self::Box { a: nums[0], b: nums[1], c: nums[2] }),
            ("tetrahedron", 1) => Ok(solid(RegularSolid::Tetrahedron)),
            ("cube", 1) => Ok(solid(RegularSolid::Cube)),
            ("octahedron", 1) => Ok(solid(RegularSolid::Octahedron)),
            ("dodecahedron", 1) => Ok(solid(RegularSolid::Dodecahedron)),
            ("icosahedron", 1) => Ok(solid(RegularSolid::Icosahedron)),
            _ => Err(GeomError::UnsupportedBody(spec.to_string())),
        }
    }

    pub fn volume(&self) -> f64 {
        match *self {
            Self::Ball { radius } => 4.0 * PI / 3.0 * radius.powi(3),
            Self::Box { a, b, c } => a * b * c,
            Self::Regular { solid, edge } => solid.data().0 * edge.powi(3),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match *self {
            Self::Ball { radius } => 4.0 * PI * radius * radius,
            Self::Box { a, b, c } => 2.0 * (a * b + b * c + c * a),
            Self::Regular { solid, edge } => solid.data().1 * edge * edge,
        }
    }

    /// Polytopes: `W_2 = (1/3) sum_e (l_e / 2)(pi - theta_e)`.
    pub fn quermass_w2(&self) -> f64 {
        match *self {
            Self::Ball { radius } => 4.0 * PI / 3.0 * radius,
            Self::Box { a, b, c } => (4.0 * (a + b + c) * 0.5 * (PI - 0.5 * PI)) / 3.0,
            Self::Regular { solid, edge } => {
                let (_, _, ne, theta) = solid.data();
                ne * 0.5 * edge * (PI - theta) / 3.0
            }
        }
    }

    /// Lower bound for `W_2` in terms of the perimeter, attained by balls:
    /// `n^{-(n-2)/(n-1)} omega_n^{1/(n-1)} P^{(n-2)/(n-1)}` at `n = 3`.
    pub fn af_w2_rhs(&self) -> f64 {
        (4.0 * PI / 3.0 * self.perimeter() / 3.0).sqrt()
    }

    /// Steiner polynomial `|K + rho B| = V + P rho + 3 W_2 rho^2 + (4 pi / 3) rho^3`.
    pub fn steiner_volume(&self, rho: f64) -> f64 {
        self.volume() + self.perimeter() * rho + 3.0 * self.quermass_w2() * rho * rho + 4.0 * PI / 3.0 * rho.powi(3)
    }
}

/// `W_2(K)`; errors for specs that do not name a supported body.
pub fn quermass_w2(spec: &str) -> Result<f64, GeomError> {
    AnalyticBody3D::from_spec(spec).map(|b| b.quermass_w2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_equality() {
        let b = AnalyticBody3D::Ball { radius: 1.0 };
        assert!((b.quermass_w2() - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((b.af_w2_rhs() - b.quermass_w2()).abs() < 1e-14);
    }

    #[test]
    fn cube_values() {
        let c = AnalyticBody3D::from_spec("cube:1").unwrap();
        assert!((c.quermass_w2() - PI).abs() < 1e-15);
        assert!((c.af_w2_rhs() - (8.0 * PI / 3.0).sqrt()).abs() < 1e-15);
        let bx = AnalyticBody3D::from_spec("box:1:1:1").unwrap();
        assert!((bx.quermass_w2() - PI).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_mean_width() {
        // W_2 = (2 pi / 3) * mean width, mean width = 3 a arccos(-1/3) / (2 pi)
        let t = AnalyticBody3D::from_spec("tetrahedron:1").unwrap();
        let b = 3.0 * (-1.0f64 / 3.0).acos() / (2.0 * PI);
        assert!((t.quermass_w2() - 2.0 * PI / 3.0 * b).abs() < 1e-14);
    }

    #[test]
    fn unsupported() {
        assert!(matches!(AnalyticBody3D::from_spec("torus:1:2"), Err(GeomError::UnsupportedBody(_))));
        assert!(quermass_w2("box:1:2").is_err());
        assert!(quermass_w2("ball:-1").is_err());
    }

    #[test]
    fn af_holds_for_all_solids() {
        for s in ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"] {
            let b = AnalyticBody3D::from_spec(&format!("{s}:1.3")).unwrap();
            assert!(b.quermass_w2() > b.af_w2_rhs(), "{s}");
        }
    }
}
