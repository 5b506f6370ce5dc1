//! G1/G2 continuity along shared edges and the compatibility conditions at
//! a vertex where four patches meet.

mod edge;
mod frame;
mod link;
mod vertex;

pub use edge::{check_g1_edge, check_g2_edge, max_normal_angle, EdgeReport, DEFAULT_FIT_DEGREES};
pub use frame::{edge_frame, project2, EdgeFrame};
pub use link::{g0_deviation, solve_edge_link, solve_g2_link, EdgeLink, LinkSample};
pub use vertex::{
    canonical_edges, check_vertex_g1, check_vertex_g2, curvature_residuals,
    lambda_product_residual, tangent_residuals, vertex_g1_report, vertex_g2_report, CompatReport,
    CornerConfig, VertexSecondOrder, VertexValues,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bezier_core::{CoreError, Side};

/// Samples used for link solves and fits.
pub const SOLVE_SAMPLES: usize = 33;
/// Samples used for verification sweeps.
pub const SWEEP_SAMPLES: usize = 101;

/// Tolerances, all relative to a unit bounding-box diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub g0: f64,
    pub g1: f64,
    pub normal_angle: f64,
    pub g2: f64,
    pub lambda_min: f64,
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            g0: 1e-9,
            g1: 1e-8,
            normal_angle: 1e-7,
            g2: 1e-6,
            lambda_min: 1e-8,
            rank: 1e-10,
        }
    }
}

/// Identification of side `a_side` of patch `a` with side `b_side` of patch
/// `b`. With `reversed`, b's edge parameter runs opposite to a's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCorrespondence {
    pub a: usize,
    pub a_side: Side,
    pub b: usize,
    pub b_side: Side,
    pub reversed: bool,
}

impl EdgeCorrespondence {
    pub fn new(a: usize, a_side: Side, b: usize, b_side: Side, reversed: bool) -> Self {
        Self {
            a,
            a_side,
            b,
            b_side,
            reversed,
        }
    }

    /// The same edge seen from b.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            a_side: self.b_side,
            b: self.a,
            b_side: self.a_side,
            reversed: self.reversed,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GcontError {
    #[error("boundary curves do not coincide (max normalized deviation {max_deviation:.3e})")]
    G0Mismatch { max_deviation: f64 },
    #[error("tangent vectors linearly dependent at t = {t}")]
    DegenerateParametrization { t: f64 },
    #[error("lambda = {lambda:.3e} too close to zero at t = {t}")]
    DegenerateLink { t: f64, lambda: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("second-order link data missing; solve G2 links first")]
    MissingSecondOrder,
    #[error(transparent)]
    Core(#[from] CoreError),
}
