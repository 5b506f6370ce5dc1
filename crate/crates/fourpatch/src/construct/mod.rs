//! Constructive G1 schemes: completing a four-patch corner, filling the
//! hole of a nine-patch ring, and filleting two strips of patches.

mod fillet;
mod fourth;
mod hole;
mod interior;
mod orient;
mod ring;
mod rows;

pub use fillet::{build_fillet, Fillet, FilletOptions};
pub use fourth::{
    analyze_corner, complete_fourth_patch, complete_fourth_patch_quartic, quartic_betas,
    quintic_betas, twist_check, CornerData, FourthPatchParams, FourthPatchReport, QuarticParams,
    TwistCheck,
};
pub use hole::{
    constraint_residuals, fill_hole, fill_hole_deg6, solve_hole_params, EdgeParams, HoleFillParams,
    HoleFillReport, HoleMode,
};
pub use interior::{default_interior, InteriorRule};
pub use orient::{reflect_along, rotate_quarter, rotate_side_to};
pub use ring::{NinePatchRing, RingLambdas, RING_POSITIONS};
pub use rows::{g1_row_from_link, link_band};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bezier_core::{BernsteinPoly, CoreError};
use crate::gcont::GcontError;

/// Absolute tolerance, relative to scale, for doubly defined control points.
pub const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what}: doubly defined control points differ by {deviation:.3e}")]
    Inconsistent { what: String, deviation: f64 },
    #[error("parameters rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Gcont(#[from] GcontError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Link data along one edge for the bi-cubic to quintic relations:
/// λ quadratic with Bernstein ordinates (λ0, α, λ1) and κ cubic with
/// ordinates (κ0, β1, β2, κ1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkCoefficients {
    pub lambda0: f64,
    pub alpha: f64,
    pub lambda1: f64,
    pub kappa0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub kappa1: f64,
}

impl LinkCoefficients {
    /// λ ≡ c, κ ≡ 0.
    pub fn constant(c: f64) -> Self {
        Self {
            lambda0: c,
            alpha: c,
            lambda1: c,
            kappa0: 0.0,
            beta1: 0.0,
            beta2: 0.0,
            kappa1: 0.0,
        }
    }

    pub fn lambda_poly(&self) -> BernsteinPoly {
        BernsteinPoly {
            coeffs: vec![self.lambda0, self.alpha, self.lambda1],
        }
    }

    pub fn kappa_poly(&self) -> BernsteinPoly {
        BernsteinPoly {
            coeffs: vec![self.kappa0, self.beta1, self.beta2, self.kappa1],
        }
    }
}
