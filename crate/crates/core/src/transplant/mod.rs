//! Test functions `u(x) = G(d(x))` on a convex polygon built from a ball
//! eigenfunction, with `d` the distance to the boundary.
//!
//! In both branches `u(x) = v(R - d(x))`: for a positive Robin parameter
//! `u` decreases from the centre level at depth `R` to `v_m` on the
//! boundary, for a negative one it increases outwards to `v_M`. Level sets of
//! `u` are boundaries of inner parallel bodies, so every integral reduces to
//! one-dimensional quadrature against the erosion profile.

mod chain;
mod map;
mod quotient;

pub use chain::{proof_chain_check, proof_chain_from_profile, LevelSlack, ProofChainReport};
pub use map::{build_g, Branch, TransplantMap};
pub use quotient::{quotient_from_profile, transplant_quotient, TransplantQuotient};

use crate::radial::RadialError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransplantError {
    #[error("polygon perimeter {polygon} differs from ball perimeter {ball}")]
    PerimeterMismatch { polygon: f64, ball: f64 },
    #[error("inradius {inradius} too small for a usable level range")]
    Degenerate { inradius: f64 },
    #[error("the transplant needs a planar Robin pair with nonzero parameter")]
    UnsupportedPair,
    #[error(transparent)]
    Radial(#[from] RadialError),
}
