use crate::numerics::unit_ball_volume;
use serde::{Deserialize, Serialize};

/// The ball `B_R(center)` in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallGeometry {
    pub dim: usize,
    pub radius: f64,
    pub center: Vec<f64>,
}

impl BallGeometry {
    pub fn new(dim: usize, radius: f64) -> Self {
        assert!(dim >= 2 && radius > 0.0);
        Self { dim, radius, center: vec![0.0; dim] }
    }

    /// Ball with perimeter `p`: `n omega_n R^{n-1} = p`.
    pub fn with_perimeter(dim: usize, p: f64) -> Self {
        let w = unit_ball_volume(dim);
        Self::new(dim, (p / (dim as f64 * w)).powf(1.0 / (dim as f64 - 1.0)))
    }

    /// Ball with volume `v`.
    pub fn with_volume(dim: usize, v: f64) -> Self {
        let w = unit_ball_volume(dim);
        Self::new(dim, (v / w).powf(1.0 / dim as f64))
    }

    pub fn omega(&self) -> f64 {
        unit_ball_volume(self.dim)
    }

    pub fn volume(&self) -> f64 {
        self.omega() * self.radius.powi(self.dim as i32)
    }

    pub fn perimeter(&self) -> f64 {
        self.dim as f64 * self.omega() * self.radius.powi(self.dim as i32 - 1)
    }

    /// Quermassintegral `W_i = omega_n R^{n-i}`.
    pub fn quermass(&self, i: usize) -> f64 {
        assert!(i <= self.dim);
        self.omega() * self.radius.powi((self.dim - i) as i32)
    }
}
