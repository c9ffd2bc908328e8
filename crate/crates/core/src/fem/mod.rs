//! Piecewise-linear finite elements for the Robin p-Laplacian on convex
//! polygons. At `p = 2` the discrete eigenvalue is computed to residual
//! `1e-10`; for other `p` the discrete quotient is minimised directly.
//! Conforming elements make both values upper bounds of the continuous
//! eigenvalue (up to the `|u|^p` quadrature when `p != 2`).

mod assemble;
mod mesh;
mod rayleigh;
mod solve;

pub use assemble::{assemble, Forms};
pub use mesh::{triangulate, Mesh};
pub use rayleigh::{discrete_quotient, minimize_rayleigh_p};
pub use solve::{solve_p2, solve_p2_richardson, DiscreteEigenpair, RichardsonEstimate};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error("inverse iteration stagnated; Ritz values {history:?}")]
    Stagnation { history: Vec<f64> },
    #[error("sparse factorization failed: {0}")]
    Factorization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
