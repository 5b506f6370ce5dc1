use serde::{Deserialize, Serialize};

use crate::bezier_core::{BezierPatch, Point3, Side};
use crate::gcont::{
    solve_edge_link, EdgeCorrespondence, Tolerances, DEFAULT_FIT_DEGREES, SOLVE_SAMPLES,
};

use super::ConstructError;

/// Grid positions of the ring, numbered 3·iu + iv + 1 on a 3x3 layout; 5 is
/// the hole.
pub const RING_POSITIONS: [usize; 8] = [1, 2, 3, 4, 6, 7, 8, 9];

/// Constant link values of the eight joins inside the ring, each named
/// from corner patch to edge patch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingLambdas {
    pub l12: f64,
    pub l14: f64,
    pub l32: f64,
    pub l36: f64,
    pub l74: f64,
    pub l78: f64,
    pub l96: f64,
    pub l98: f64,
}

impl RingLambdas {
    pub fn uniform(l: f64) -> Self {
        Self {
            l12: l,
            l14: l,
            l32: l,
            l36: l,
            l74: l,
            l78: l,
            l96: l,
            l98: l,
        }
    }

    pub fn as_array(&self) -> [f64; 8] {
        [
            self.l12, self.l14, self.l32, self.l36, self.l74, self.l78, self.l96, self.l98,
        ]
    }

    fn from_array(a: [f64; 8]) -> Self {
        Self {
            l12: a[0],
            l14: a[1],
            l32: a[2],
            l36: a[3],
            l74: a[4],
            l78: a[5],
            l96: a[6],
            l98: a[7],
        }
    }
}

/// The joins in [`RingLambdas`] order: (corner, side, edge patch, side).
const JOINS: [(usize, Side, usize, Side); 8] = [
    (1, Side::V1, 2, Side::V0),
    (1, Side::U1, 4, Side::U0),
    (3, Side::V0, 2, Side::V1),
    (3, Side::U1, 6, Side::U0),
    (7, Side::U0, 4, Side::U1),
    (7, Side::V1, 8, Side::V0),
    (9, Side::U0, 6, Side::U1),
    (9, Side::V0, 8, Side::V1),
];

/// Eight bi-cubic patches around a square hole, joined G1 with constant λ
/// and κ ≡ 0.
#[derive(Debug, Clone)]
pub struct NinePatchRing {
    patches: [BezierPatch; 8],
    lambdas: RingLambdas,
}

fn slot(pos: usize) -> Option<usize> {
    RING_POSITIONS.iter().position(|&p| p == pos)
}

impl NinePatchRing {
    /// Validate the ring and extract its λ values. `patches` follow
    /// [`RING_POSITIONS`].
    pub fn new(patches: [BezierPatch; 8]) -> Result<Self, ConstructError> {
        for (k, p) in patches.iter().enumerate() {
            if p.degree_u() != 3 || p.degree_v() != 3 {
                return Err(ConstructError::Precondition(format!(
                    "ring patch {} must be bi-cubic",
                    RING_POSITIONS[k]
                )));
            }
        }
        let tol = Tolerances::default();
        let mut l = [0.0; 8];
        for (k, &(a, a_side, b, b_side)) in JOINS.iter().enumerate() {
            let pa = &patches[slot(a).expect("ring slot")];
            let pb = &patches[slot(b).expect("ring slot")];
            let corr = EdgeCorrespondence::new(a, a_side, b, b_side, false);
            let link = solve_edge_link(pa, pb, &corr, SOLVE_SAMPLES, DEFAULT_FIT_DEGREES, &tol)
                .map_err(|e| ConstructError::Precondition(format!("ring join {a}-{b}: {e}")))?;
            if link.max_g1_residual() > tol.g1 {
                return Err(ConstructError::Precondition(format!(
                    "ring join {a}-{b} is not G1 (residual {:.3e})",
                    link.max_g1_residual()
                )));
            }
            let lambda = link.samples[0].lambda;
            for s in &link.samples {
                if (s.lambda - lambda).abs() > 1e-8 || s.kappa.abs() > 1e-8 {
                    return Err(ConstructError::Precondition(format!(
                        "ring join {a}-{b} needs constant λ and κ ≡ 0 (t = {})",
                        s.t
                    )));
                }
            }
            l[k] = lambda;
        }
        Ok(Self {
            patches,
            lambdas: RingLambdas::from_array(l),
        })
    }

    /// Build the four edge patches from the corner patches 1, 3, 7, 9 so
    /// that every join has the given constant λ and κ ≡ 0.
    pub fn from_corners(
        corners: [BezierPatch; 4],
        lambdas: RingLambdas,
    ) -> Result<Self, ConstructError> {
        for p in &corners {
            if p.degree_u() != 3 || p.degree_v() != 3 {
                return Err(ConstructError::Precondition(
                    "corner patches must be bi-cubic".into(),
                ));
            }
        }
        let [c1, c3, c7, c9] = corners;
        let l = lambdas;
        let p2 = BezierPatch::from_fn(3, 3, |i, j| match j {
            0 => c1.get(i, 3),
            1 => c1.get(i, 3) + (c1.get(i, 3) - c1.get(i, 2)) * l.l12,
            2 => c3.get(i, 0) + (c3.get(i, 0) - c3.get(i, 1)) * l.l32,
            _ => c3.get(i, 0),
        })?;
        let p4 = BezierPatch::from_fn(3, 3, |i, j| match i {
            0 => c1.get(3, j),
            1 => c1.get(3, j) + (c1.get(3, j) - c1.get(2, j)) * l.l14,
            2 => c7.get(0, j) + (c7.get(0, j) - c7.get(1, j)) * l.l74,
            _ => c7.get(0, j),
        })?;
        let p6 = BezierPatch::from_fn(3, 3, |i, j| match i {
            0 => c3.get(3, j),
            1 => c3.get(3, j) + (c3.get(3, j) - c3.get(2, j)) * l.l36,
            2 => c9.get(0, j) + (c9.get(0, j) - c9.get(1, j)) * l.l96,
            _ => c9.get(0, j),
        })?;
        let p8 = BezierPatch::from_fn(3, 3, |i, j| match j {
            0 => c7.get(i, 3),
            1 => c7.get(i, 3) + (c7.get(i, 3) - c7.get(i, 2)) * l.l78,
            2 => c9.get(i, 0) + (c9.get(i, 0) - c9.get(i, 1)) * l.l98,
            _ => c9.get(i, 0),
        })?;
        Ok(Self {
            patches: [c1, p2, c3, p4, p6, c7, p8, c9],
            lambdas,
        })
    }

    /// Ring of a uniform 3x3 split of `global`, which must be bi-cubic.
    pub fn from_global(global: &BezierPatch) -> Result<Self, ConstructError> {
        let grid = crate::fixtures::split_grid(global, 3, 3);
        let patches = RING_POSITIONS.map(|pos| grid[(pos - 1) / 3][(pos - 1) % 3].clone());
        Self::new(patches)
    }

    pub fn patch(&self, pos: usize) -> Option<&BezierPatch> {
        slot(pos).map(|k| &self.patches[k])
    }

    pub fn patches(&self) -> &[BezierPatch; 8] {
        &self.patches
    }

    pub fn lambdas(&self) -> RingLambdas {
        self.lambdas
    }

    pub fn scale(&self) -> f64 {
        crate::bezier_core::bbox_diagonal(self.patches.iter().flat_map(|p| p.net().iter()))
    }

    /// Four corner points of the hole, (u,v) = (0,0), (1,0), (0,1), (1,1).
    pub fn hole_corners(&self) -> [Point3; 4] {
        let g = |pos| self.patch(pos).expect("ring position");
        [
            g(1).corner(1, 1),
            g(7).corner(0, 1),
            g(3).corner(1, 0),
            g(9).corner(0, 0),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(x0: f64, y0: f64) -> BezierPatch {
        BezierPatch::from_fn(3, 3, |i, j| {
            Point3::new(x0 + i as f64 / 3.0, y0 + j as f64 / 3.0, 0.0)
        })
        .unwrap()
    }

    #[test]
    fn constructed_ring_validates_with_its_lambdas() {
        let lam = RingLambdas {
            l12: 0.7,
            l14: 1.3,
            l32: 1.1,
            l36: 0.9,
            l74: 1.6,
            l78: 0.6,
            l96: 1.2,
            l98: 0.8,
        };
        let ring = NinePatchRing::from_corners(
            [
                flat(0.0, 0.0),
                flat(0.0, 2.5),
                flat(2.5, 0.0),
                flat(2.5, 2.5),
            ],
            lam,
        )
        .unwrap();
        let again = NinePatchRing::new(ring.patches().clone()).unwrap();
        for (a, b) in again.lambdas().as_array().iter().zip(lam.as_array()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn broken_ring_rejected() {
        let lam = RingLambdas::uniform(1.0);
        let ring = NinePatchRing::from_corners(
            [
                flat(0.0, 0.0),
                flat(0.0, 2.5),
                flat(2.5, 0.0),
                flat(2.5, 2.5),
            ],
            lam,
        )
        .unwrap();
        let mut ps = ring.patches().clone();
        let mut p2 = ps[1].clone();
        p2.set(1, 1, p2.get(1, 1) + Point3::new(0.0, 0.0, 0.1));
        ps[1] = p2;
        assert!(NinePatchRing::new(ps).is_err());
    }
}
