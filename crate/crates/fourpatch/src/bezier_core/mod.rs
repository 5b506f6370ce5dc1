//! Bernstein and tensor-product Bezier primitives.

mod bernstein;
mod curve;
mod mesh;
mod patch;
mod surface;

pub use bernstein::{bernstein_all, bernstein_eval, binomial, BernsteinPoly, MAX_TABLE_DEGREE};
pub use curve::{
    elevate_cubic_row_to_quintic, elevation_weight, ControlRow, RowSource, CUBIC_TO_QUINTIC,
};
pub use mesh::{tessellate, TriangleMesh};
pub use patch::{basis_weight, BezierPatch};
pub use surface::{compose_bilinear, DomainMap, MapJet, Reparametrized, Surface};

pub(crate) use curve::elevate_points;
pub(crate) use patch::bbox_diagonal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vec3 = nalgebra::Vector3<f64>;
/// Points and vectors share one representation; affine combinations are
/// written directly on coordinates.
pub type Point3 = Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("parameter ({u}, {v}) outside the unit square")]
    Domain { u: f64, v: f64 },
    #[error("derivative order ({du}, {dv}) unsupported, need du + dv <= 2")]
    UnsupportedOrder { du: usize, dv: usize },
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("degrees must be at least 1")]
    BadDegree,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("sample counts must be at least 1")]
    BadSampling,
    #[error("need {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("singular system in {0}")]
    Singular(&'static str),
}

/// A side of the unit parameter square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "u0")]
    U0,
    #[serde(rename = "u1")]
    U1,
    #[serde(rename = "v0")]
    V0,
    #[serde(rename = "v1")]
    V1,
}

impl Side {
    /// Parameter point on this side at edge parameter `t`.
    pub fn param(self, t: f64) -> (f64, f64) {
        match self {
            Side::U0 => (0.0, t),
            Side::U1 => (1.0, t),
            Side::V0 => (t, 0.0),
            Side::V1 => (t, 1.0),
        }
    }

    /// True for u = const sides, whose free parameter is v.
    pub fn is_u_side(self) -> bool {
        matches!(self, Side::U0 | Side::U1)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::U0 => "u0",
            Side::U1 => "u1",
            Side::V0 => "v0",
            Side::V1 => "v1",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "u0" => Some(Side::U0),
            "u1" => Some(Side::U1),
            "v0" => Some(Side::V0),
            "v1" => Some(Side::V1),
            _ => None,
        }
    }
}
