//! First Robin and Dirichlet eigenpairs of the p-Laplacian on balls.
//!
//! The radial equation `(r^{n-1} |v'|^{p-2} v')' = -lambda r^{n-1} |v|^{p-2} v`
//! is written for `z = v - 1` and the flux `w = |v'|^{p-2} v'`, together with
//! the running integrals `q = int r^{n-1} |v|^p` and `e = int r^{n-1} |v'|^p`.

mod cache;
mod checks;
mod shooting;
mod speed;

pub use cache::{cache_key, solve_cached, CACHE_ENV};
pub use checks::{constant_c, cut_parameter, monotonicity_check, weak_residual, MonotonicityReport};
pub use shooting::{dirichlet_radial, radial_grid, solve_radial, GRID_POINTS};
pub use speed::{level_speed, LevelSpeed};

use crate::numerics::interp::Hermite;
use crate::numerics::{phi, unit_ball_volume};
use crate::numerics::ode::OdeError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("no sign change of the boundary residual on [{lo}, {hi}]")]
    BracketNotFound { lo: f64, hi: f64 },
    #[error("integration failed at r = {radius}: {source}")]
    Ode { radius: f64, source: OdeError },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("profile is not strictly monotone near r = {radius}")]
    NonMonotone { radius: f64 },
}

/// Boundary condition on the sphere `|x| = R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Robin { beta: f64 },
    Dirichlet,
}

/// A radial eigenpair on `B_R` in `R^n`, normalised by `v(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialEigenpair {
    pub dim: usize,
    pub p: f64,
    pub boundary: Boundary,
    pub radius: f64,
    pub lambda: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `v(r) - v(0)`, kept separately for precision near the centre.
    pub excess: Vec<f64>,
    pub derivs: Vec<f64>,
    /// `w = |v'|^{p-2} v'`.
    pub fluxes: Vec<f64>,
    pub v_min: f64,
    pub v_max: f64,
    /// `int_{B_R} v^p`.
    pub lp_norm_p: f64,
    /// `int_{B_R} |grad v|^p`.
    pub grad_norm_p: f64,
    pub linf: f64,
    /// Relative boundary-condition residual at `r = R`.
    pub boundary_residual: f64,
    /// Relative change of `(v(R), w(R))` when the series start moves from
    /// `eps` to `2 eps`.
    pub start_sensitivity: f64,
}

impl RadialEigenpair {
    /// Robin parameter; `+inf` for the Dirichlet pair.
    pub fn beta(&self) -> f64 {
        match self.boundary {
            Boundary::Robin { beta } => beta,
            Boundary::Dirichlet => f64::INFINITY,
        }
    }

    pub fn ball_volume(&self) -> f64 {
        unit_ball_volume(self.dim) * self.radius.powi(self.dim as i32)
    }

    pub fn ball_perimeter(&self) -> f64 {
        self.dim as f64 * unit_ball_volume(self.dim) * self.radius.powi(self.dim as i32 - 1)
    }

    /// `v(0)`.
    pub fn center_value(&self) -> f64 {
        self.values[0]
    }

    /// `v(R)`.
    pub fn boundary_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// `w'(r) = -lambda phi_p(v) - (n-1) w / r`, with limit `-lambda / n`
    /// at the centre.
    pub fn flux_derivs(&self) -> Vec<f64> {
        let n = self.dim as f64;
        self.grid
            .iter()
            .zip(self.values.iter().zip(&self.fluxes))
            .map(|(&r, (&v, &w))| {
                if r == 0.0 {
                    -self.lambda * phi(v, self.p) / n
                } else {
                    -self.lambda * phi(v, self.p) - (n - 1.0) * w / r
                }
            })
            .collect()
    }

    /// Cubic Hermite interpolant of `v` on the grid.
    pub fn profile(&self) -> Hermite {
        Hermite::new(self.grid.clone(), self.values.clone(), self.derivs.clone())
    }

    /// Cubic Hermite interpolant of `w` on the grid.
    pub fn flux_profile(&self) -> Hermite {
        Hermite::new(self.grid.clone(), self.fluxes.clone(), self.flux_derivs())
    }

    /// `(int |grad v|^p + beta int_{dB} v^p) / int v^p`, which equals
    /// `lambda` for an exact eigenpair.
    pub fn rayleigh_quotient(&self) -> f64 {
        let bnd = match self.boundary {
            Boundary::Robin { beta } => beta * self.boundary_value().abs().powf(self.p) * self.ball_perimeter(),
            Boundary::Dirichlet => 0.0,
        };
        (self.grad_norm_p + bnd) / self.lp_norm_p
    }
}
