use serde::{Deserialize, Serialize};

use crate::bezier_core::{BernsteinPoly, BezierPatch, ControlRow, Point3, Side, Vec3};

use super::interior::{apply_rule, default_interior};
use super::ring::NinePatchRing;
use super::rows::{g1_row_from_link, link_band};
use super::{ConstructError, InteriorRule, LinkCoefficients, CONSISTENCY_TOL};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleMode {
    #[default]
    Quintic,
    Sextic,
}

/// Interior link ordinates of one hole side: λ = (λ0, α, λ1) and
/// κ = (0, β1, β2, 0). In sextic mode λ is cubic with ordinates
/// (λ0, alpha1, alpha2, λ1) and κ ≡ 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeParams {
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha2: Option<f64>,
}

/// Link data on the four hole sides, named by the neighboring ring patch:
/// 4 below (v = 0), 2 left (u = 0), 6 above (v = 1), 8 right (u = 1).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct HoleFillParams {
    pub mode: HoleMode,
    pub e2: EdgeParams,
    pub e4: EdgeParams,
    pub e6: EdgeParams,
    pub e8: EdgeParams,
}

#[derive(Debug, Clone, Serialize)]
pub struct HoleFillReport {
    pub params: HoleFillParams,
    /// Largest disagreement of doubly defined corner points, over scale.
    pub corner_deviation: f64,
    pub constraint_residuals: Option<[f64; 8]>,
}

/// Pinned λ end values (λ0, λ1) on sides 2, 4, 6, 8.
fn side_lambdas(ring: &NinePatchRing) -> [(f64, f64); 4] {
    let l = ring.lambdas();
    [
        (l.l14, l.l36),
        (l.l12, l.l78),
        (l.l32, l.l98),
        (l.l74, l.l96),
    ]
}

/// Residuals of the eight corner compatibility relations, ordered: corner
/// (0,0) twice, (1,1) twice, (1,0) twice, (0,1) twice.
pub fn constraint_residuals(ring: &NinePatchRing, p: &HoleFillParams) -> [f64; 8] {
    let l = ring.lambdas();
    let (a2, a4, a6, a8) = (p.e2.alpha, p.e4.alpha, p.e6.alpha, p.e8.alpha);
    [
        3.0 * l.l14 * p.e4.beta1 - 2.0 * (a2 - l.l14),
        3.0 * l.l12 * p.e2.beta1 - 2.0 * (a4 - l.l12),
        3.0 * l.l96 * p.e6.beta2 - 2.0 * (l.l96 - a8),
        3.0 * l.l98 * p.e8.beta2 - 2.0 * (l.l98 - a6),
        3.0 * l.l74 * p.e4.beta2 - 2.0 * (l.l74 - a8),
        3.0 * l.l78 * p.e8.beta1 - 2.0 * (a4 - l.l78),
        3.0 * l.l36 * p.e6.beta1 - 2.0 * (a2 - l.l36),
        3.0 * l.l32 * p.e2.beta2 - 2.0 * (l.l32 - a6),
    ]
}

/// Solve the eight β from the four α on sides 2, 4, 6, 8. Without `alphas`
/// each α is the mean of its side's pinned λ end values.
pub fn solve_hole_params(ring: &NinePatchRing, alphas: Option<[f64; 4]>) -> HoleFillParams {
    let ends = side_lambdas(ring);
    let [a2, a4, a6, a8] = alphas.unwrap_or(ends.map(|(a, b)| 0.5 * (a + b)));
    let l = ring.lambdas();
    let up = |alpha: f64, lam: f64| 2.0 * (alpha - lam) / (3.0 * lam);
    let down = |alpha: f64, lam: f64| 2.0 * (lam - alpha) / (3.0 * lam);
    let e = |alpha, beta1, beta2| EdgeParams {
        alpha,
        beta1,
        beta2,
        alpha1: None,
        alpha2: None,
    };
    HoleFillParams {
        mode: HoleMode::Quintic,
        e2: e(a2, up(a4, l.l12), down(a6, l.l32)),
        e4: e(a4, up(a2, l.l14), down(a8, l.l74)),
        e6: e(a6, up(a2, l.l36), down(a8, l.l96)),
        e8: e(a8, up(a4, l.l78), down(a6, l.l98)),
    }
}

/// Patch under construction; each point may be set by two sides.
struct Grid {
    n: usize,
    pts: Vec<Option<Point3>>,
    dev: f64,
}

impl Grid {
    fn new(n: usize) -> Self {
        Self {
            n,
            pts: vec![None; (n + 1) * (n + 1)],
            dev: 0.0,
        }
    }

    fn put(&mut self, i: usize, j: usize, p: Point3) {
        let k = i * (self.n + 1) + j;
        match self.pts[k] {
            Some(q) => self.dev = self.dev.max((p - q).norm()),
            None => self.pts[k] = Some(p),
        }
    }

    fn finish(self) -> Result<(BezierPatch, f64), ConstructError> {
        let n = self.n;
        let net = self
            .pts
            .iter()
            .map(|p| p.unwrap_or_else(Point3::zeros))
            .collect();
        Ok((BezierPatch::new(n, n, net)?, self.dev))
    }
}

type Offsets<'a> =
    dyn Fn(&ControlRow, &ControlRow, usize) -> Result<Vec<Vec3>, ConstructError> + 'a;

/// Outer two bands on all four sides. `offsets(boundary, inner, side)`
/// returns n times the first difference into the hole, side in 2,4,6,8 order.
fn hole_bands(ring: &NinePatchRing, n: usize, offsets: &Offsets) -> Result<Grid, ConstructError> {
    let g = |pos| ring.patch(pos).expect("ring position");
    let m = n as f64;
    let mut grid = Grid::new(n);
    // (neighbor, its side, side index, set(k, level, point))
    let sides: [(usize, Side, usize); 4] = [
        (4, Side::V1, 1),
        (2, Side::U1, 0),
        (6, Side::V0, 2),
        (8, Side::U0, 3),
    ];
    for (pos, side, idx) in sides {
        let b = g(pos).boundary_row(side, 0)?;
        let inner = g(pos).boundary_row(side, 1)?;
        let row0 = b.elevate_to(n).points;
        let off = offsets(&b, &inner, idx)?;
        for k in 0..=n {
            let p0 = row0[k];
            let p1 = row0[k] + off[k] / m;
            match pos {
                4 => {
                    grid.put(k, 0, p0);
                    grid.put(k, 1, p1);
                }
                2 => {
                    grid.put(0, k, p0);
                    grid.put(1, k, p1);
                }
                6 => {
                    grid.put(k, n, p0);
                    grid.put(k, n - 1, p1);
                }
                _ => {
                    grid.put(n, k, p0);
                    grid.put(n - 1, k, p1);
                }
            }
        }
    }
    Ok(grid)
}

fn finish_fill(
    grid: Grid,
    ring: &NinePatchRing,
    interior: InteriorRule,
) -> Result<(BezierPatch, f64), ConstructError> {
    let (mut p, dev) = grid.finish()?;
    let dev = dev / ring.scale();
    if dev > CONSISTENCY_TOL {
        return Err(ConstructError::Inconsistent {
            what: "hole corner".into(),
            deviation: dev,
        });
    }
    apply_rule(&mut p, interior, default_interior)?;
    Ok((p, dev))
}

/// Bi-quintic patch joining all eight ring neighbors of the hole with G1
/// continuity. `params` defaults to [`solve_hole_params`] with default α.
pub fn fill_hole(
    ring: &NinePatchRing,
    params: Option<HoleFillParams>,
    interior: InteriorRule,
) -> Result<(BezierPatch, HoleFillReport), ConstructError> {
    let params = params.unwrap_or_else(|| solve_hole_params(ring, None));
    if params.mode != HoleMode::Quintic {
        return Err(ConstructError::Precondition(
            "fill_hole expects quintic parameters".into(),
        ));
    }
    let ends = side_lambdas(ring);
    let edges = [params.e2, params.e4, params.e6, params.e8];
    let coeff = |k: usize| LinkCoefficients {
        lambda0: ends[k].0,
        alpha: edges[k].alpha,
        lambda1: ends[k].1,
        kappa0: 0.0,
        beta1: edges[k].beta1,
        beta2: edges[k].beta2,
        kappa1: 0.0,
    };
    let grid = hole_bands(ring, 5, &|b, i, k| {
        Ok(g1_row_from_link(b, i, &coeff(k), 5)?.points)
    })?;
    let (p, dev) = finish_fill(grid, ring, interior)?;
    let residuals = constraint_residuals(ring, &params);
    Ok((
        p,
        HoleFillReport {
            params,
            corner_deviation: dev,
            constraint_residuals: Some(residuals),
        },
    ))
}

/// Bi-sextic variant: λ cubic with ordinates (λ0, λ0, λ1, λ1), κ ≡ 0, so
/// no relations between sides are needed.
pub fn fill_hole_deg6(
    ring: &NinePatchRing,
    interior: InteriorRule,
) -> Result<(BezierPatch, HoleFillReport), ConstructError> {
    let ends = side_lambdas(ring);
    let lambda = |k: usize| BernsteinPoly {
        coeffs: vec![ends[k].0, ends[k].0, ends[k].1, ends[k].1],
    };
    let grid = hole_bands(ring, 6, &|b, i, k| {
        link_band(
            &b.points,
            &i.points,
            &lambda(k),
            &BernsteinPoly::zero(),
            3,
            6,
        )
    })?;
    let (p, dev) = finish_fill(grid, ring, interior)?;
    let e = |k: usize| EdgeParams {
        alpha: 0.5 * (ends[k].0 + ends[k].1),
        beta1: 0.0,
        beta2: 0.0,
        alpha1: Some(ends[k].0),
        alpha2: Some(ends[k].1),
    };
    let params = HoleFillParams {
        mode: HoleMode::Sextic,
        e2: e(0),
        e4: e(1),
        e6: e(2),
        e8: e(3),
    };
    Ok((
        p,
        HoleFillReport {
            params,
            corner_deviation: dev,
            constraint_residuals: None,
        },
    ))
}
