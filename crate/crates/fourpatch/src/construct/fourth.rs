use serde::Serialize;

use crate::bezier_core::{BernsteinPoly, BezierPatch, Point3, Side, Surface, Vec3};
use crate::gcont::{
    solve_edge_link, EdgeCorrespondence, Tolerances, DEFAULT_FIT_DEGREES, SOLVE_SAMPLES,
};

use super::interior::{apply_rule, parallelogram_interior};
use super::rows::{g1_row_from_link, link_band};
use super::{ConstructError, InteriorRule, LinkCoefficients, CONSISTENCY_TOL};

/// Link data of the two given edges at a corner 1-2-4 (1 lower left, 2 to
/// its right, 4 above). λ is constant along both edges and κ is linear,
/// vanishing at the common vertex: κ12(v) = c12 (1-v), κ14(u) = c14 (1-u).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CornerData {
    pub lambda12: f64,
    pub lambda14: f64,
    pub c12: f64,
    pub c14: f64,
    pub scale: f64,
}

impl CornerData {
    pub fn kappa_free(&self) -> bool {
        self.c12.abs() <= KAPPA_ZERO && self.c14.abs() <= KAPPA_ZERO
    }
}

const KAPPA_ZERO: f64 = 1e-10;
/// Allowed deviation of sampled link values from the assumed form.
const FORM_TOL: f64 = 1e-8;

fn require_bicubic(p: &BezierPatch, name: &str) -> Result<(), ConstructError> {
    if p.degree_u() != 3 || p.degree_v() != 3 {
        return Err(ConstructError::Precondition(format!(
            "{name} must be bi-cubic, got ({}, {})",
            p.degree_u(),
            p.degree_v()
        )));
    }
    Ok(())
}

/// Solve the links on edges (1,2) and (1,4) and check they have the form
/// the completion assumes.
pub fn analyze_corner(
    r1: &BezierPatch,
    r2: &BezierPatch,
    r4: &BezierPatch,
) -> Result<CornerData, ConstructError> {
    for (p, n) in [(r1, "patch 1"), (r2, "patch 2"), (r4, "patch 4")] {
        require_bicubic(p, n)?;
    }
    let tol = Tolerances::default();
    let mut out = [(0.0, 0.0); 2];
    for (k, (b, a_side, b_side, name)) in [
        (r2, Side::U1, Side::U0, "(1,2)"),
        (r4, Side::V1, Side::V0, "(1,4)"),
    ]
    .into_iter()
    .enumerate()
    {
        let corr = EdgeCorrespondence::new(0, a_side, 1, b_side, false);
        let link = solve_edge_link(r1, b, &corr, SOLVE_SAMPLES, DEFAULT_FIT_DEGREES, &tol)?;
        if link.max_g1_residual() > tol.g1 {
            return Err(ConstructError::Precondition(format!(
                "edge {name} is not G1 (residual {:.3e})",
                link.max_g1_residual()
            )));
        }
        let lambda = link.end_sample(true).lambda;
        let c = link.end_sample(false).kappa;
        for s in &link.samples {
            if (s.lambda - lambda).abs() > FORM_TOL || (s.kappa - c * (1.0 - s.t)).abs() > FORM_TOL
            {
                return Err(ConstructError::Precondition(format!(
                    "edge {name}: link is not λ constant with κ linear and zero at the vertex (t = {})",
                    s.t
                )));
            }
        }
        out[k] = (lambda, c);
    }
    let scale = r1.scale().max(r2.scale()).max(r4.scale());
    Ok(CornerData {
        lambda12: out[0].0,
        lambda14: out[1].0,
        c12: out[0].1,
        c14: out[1].1,
        scale,
    })
}

/// Free choices for the bi-quintic completion. Unset values take the
/// defaults: far-end λ equal to the pinned vertex value, far-end κ zero,
/// α at the mean of the λ end values, β2 zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FourthPatchParams {
    pub lambda23_1: Option<f64>,
    pub lambda43_1: Option<f64>,
    pub kappa23_1: f64,
    pub kappa43_1: f64,
    pub alpha23: Option<f64>,
    pub alpha43: Option<f64>,
    pub beta2_23: f64,
    pub beta2_43: f64,
}

/// The cross derivative r_uv at the vertex computed through edge (2,3) and
/// through edge (4,3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistCheck {
    pub q23: [f64; 3],
    pub q43: [f64; 3],
    /// |Q23 - Q43| divided by scale.
    pub mismatch: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FourthPatchReport {
    pub corner: CornerData,
    pub link23: LinkCoefficients,
    pub link43: LinkCoefficients,
    pub twist: TwistCheck,
    /// Distance between the two computations of q_{1,1}, over scale.
    pub q11_deviation: f64,
}

/// β1 on edges (2,3) and (4,3) that make the two twist expressions agree
/// when κ vanishes on the given edges.
pub fn quintic_betas(lambda12: f64, lambda14: f64, alpha23: f64, alpha43: f64) -> (f64, f64) {
    (
        2.0 * (alpha43 - lambda12) / (3.0 * lambda12),
        2.0 * (alpha23 - lambda14) / (3.0 * lambda14),
    )
}

/// κ-coefficients β on edges (2,3) and (4,3) required by the bi-quartic
/// completion.
pub fn quartic_betas(lambda12: f64, lambda14: f64, lambda23_1: f64, lambda43_1: f64) -> (f64, f64) {
    (
        (lambda43_1 - lambda12) / (2.0 * lambda12),
        (lambda23_1 - lambda14) / (2.0 * lambda14),
    )
}

struct Bands {
    patch: BezierPatch,
    q11_row: Point3,
    q11_col: Point3,
    corner_dev: f64,
}

/// Rows 0,1 from edge (2,3) and columns 0,1 from edge (4,3). `offsets`
/// maps (boundary, inner) to the scaled cross offsets.
fn assemble_bands(
    r2: &BezierPatch,
    r4: &BezierPatch,
    n: usize,
    offsets23: &dyn Fn(&[Point3], &[Point3]) -> Result<Vec<Vec3>, ConstructError>,
    offsets43: &dyn Fn(&[Point3], &[Point3]) -> Result<Vec<Vec3>, ConstructError>,
) -> Result<Bands, ConstructError> {
    let b23 = r2.boundary_row(Side::V1, 0)?;
    let i23 = r2.boundary_row(Side::V1, 1)?;
    let b43 = r4.boundary_row(Side::U1, 0)?;
    let i43 = r4.boundary_row(Side::U1, 1)?;
    let row0 = b23.elevate_to(n).points;
    let col0 = b43.elevate_to(n).points;
    let off23 = offsets23(&b23.points, &i23.points)?;
    let off43 = offsets43(&b43.points, &i43.points)?;
    let m = n as f64;
    let mut p = BezierPatch::from_fn(n, n, |_, _| Point3::zeros())?;
    for i in 0..=n {
        p.set(i, 0, row0[i]);
        p.set(i, 1, row0[i] + off23[i] / m);
    }
    let q11_row = p.get(1, 1);
    let col1: Vec<Point3> = col0.iter().zip(&off43).map(|(c, o)| c + o / m).collect();
    let corner_dev = [
        (row0[0], col0[0]),
        (row0[1], col1[0]),
        (p.get(0, 1), col0[1]),
    ]
    .iter()
    .map(|(a, b)| (a - b).norm())
    .fold(0.0, f64::max);
    for j in 2..=n {
        p.set(0, j, col0[j]);
        p.set(1, j, col1[j]);
    }
    Ok(Bands {
        patch: p,
        q11_row,
        q11_col: col1[1],
        corner_dev,
    })
}

fn twist_of(b: &Bands, n: usize, scale: f64) -> TwistCheck {
    let p = &b.patch;
    let base = p.get(1, 0) + p.get(0, 1) - p.get(0, 0);
    let f = (n * n) as f64;
    let q23 = (b.q11_row - base) * f;
    let q43 = (b.q11_col - base) * f;
    TwistCheck {
        q23: [q23.x, q23.y, q23.z],
        q43: [q43.x, q43.y, q43.z],
        mismatch: (q23 - q43).norm() / scale,
    }
}

fn quintic_bands(
    r2: &BezierPatch,
    r4: &BezierPatch,
    c23: &LinkCoefficients,
    c43: &LinkCoefficients,
) -> Result<Bands, ConstructError> {
    use crate::bezier_core::ControlRow;
    let row = |c: LinkCoefficients| {
        move |b: &[Point3], i: &[Point3]| -> Result<Vec<Vec3>, ConstructError> {
            Ok(g1_row_from_link(
                &ControlRow::new(b.to_vec()),
                &ControlRow::new(i.to_vec()),
                &c,
                5,
            )?
            .points)
        }
    };
    assemble_bands(r2, r4, 5, &row(*c23), &row(*c43))
}

/// Twist expressions of the bi-quintic bands for arbitrary link data on
/// edges (2,3) and (4,3); no consistency is enforced.
pub fn twist_check(
    r2: &BezierPatch,
    r4: &BezierPatch,
    c23: &LinkCoefficients,
    c43: &LinkCoefficients,
) -> Result<TwistCheck, ConstructError> {
    require_bicubic(r2, "patch 2")?;
    require_bicubic(r4, "patch 4")?;
    Ok(twist_of(
        &quintic_bands(r2, r4, c23, c43)?,
        5,
        r2.scale().max(r4.scale()),
    ))
}

/// Solve β1_23, β1_43 from the linear twist equation. Used when κ does not
/// vanish on the given edges.
fn solve_betas(
    r2: &BezierPatch,
    r4: &BezierPatch,
    c23: LinkCoefficients,
    c43: LinkCoefficients,
) -> Result<(f64, f64), ConstructError> {
    let diff = |b23: f64, b43: f64| -> Result<Vec3, ConstructError> {
        let b = quintic_bands(
            r2,
            r4,
            &LinkCoefficients { beta1: b23, ..c23 },
            &LinkCoefficients { beta1: b43, ..c43 },
        )?;
        Ok(b.q11_row - b.q11_col)
    };
    let d0 = diff(0.0, 0.0)?;
    let e1 = diff(1.0, 0.0)? - d0;
    let e2 = diff(0.0, 1.0)? - d0;
    let scale = r2.scale().max(r4.scale());
    let (x, y, _) = crate::gcont::project2(&(-d0), &e1, &e2, scale, Tolerances::default().rank)
        .ok_or_else(|| {
            ConstructError::Precondition("edge tangents at the vertex are parallel".into())
        })?;
    Ok((x, y))
}

/// Complete the corner with a bi-quintic patch 3 that meets patch 2 along
/// its v = 1 side and patch 4 along its u = 1 side with G1 continuity.
pub fn complete_fourth_patch(
    r1: &BezierPatch,
    r2: &BezierPatch,
    r4: &BezierPatch,
    params: &FourthPatchParams,
    interior: InteriorRule,
) -> Result<(BezierPatch, FourthPatchReport), ConstructError> {
    let corner = analyze_corner(r1, r2, r4)?;
    let (l12, l14) = (corner.lambda12, corner.lambda14);
    // tangent-plane compatibility pins λ at the vertex and forces κ = 0 there
    let l23_0 = l14;
    let l43_0 = l12;
    let l23_1 = params.lambda23_1.unwrap_or(l23_0);
    let l43_1 = params.lambda43_1.unwrap_or(l43_0);
    let a23 = params.alpha23.unwrap_or(0.5 * (l23_0 + l23_1));
    let a43 = params.alpha43.unwrap_or(0.5 * (l43_0 + l43_1));
    let mut c23 = LinkCoefficients {
        lambda0: l23_0,
        alpha: a23,
        lambda1: l23_1,
        kappa0: 0.0,
        beta1: 0.0,
        beta2: params.beta2_23,
        kappa1: params.kappa23_1,
    };
    let mut c43 = LinkCoefficients {
        lambda0: l43_0,
        alpha: a43,
        lambda1: l43_1,
        kappa0: 0.0,
        beta1: 0.0,
        beta2: params.beta2_43,
        kappa1: params.kappa43_1,
    };
    let (b23, b43) = if corner.kappa_free() {
        quintic_betas(l12, l14, a23, a43)
    } else {
        solve_betas(r2, r4, c23, c43)?
    };
    c23.beta1 = b23;
    c43.beta1 = b43;
    let bands = quintic_bands(r2, r4, &c23, &c43)?;
    let twist = twist_of(&bands, 5, corner.scale);
    let q11_deviation = (bands.q11_row - bands.q11_col).norm() / corner.scale;
    check_bands(&bands, corner.scale, "bi-quintic corner")?;
    let mut p = bands.patch;
    apply_rule(&mut p, interior, |p| {
        parallelogram_interior(p);
        Ok(())
    })?;
    Ok((
        p,
        FourthPatchReport {
            corner,
            link23: c23,
            link43: c43,
            twist,
            q11_deviation,
        },
    ))
}

fn check_bands(b: &Bands, scale: f64, what: &str) -> Result<(), ConstructError> {
    let dev = b.corner_dev.max((b.q11_row - b.q11_col).norm()) / scale;
    if dev > CONSISTENCY_TOL {
        return Err(ConstructError::Inconsistent {
            what: what.into(),
            deviation: dev,
        });
    }
    Ok(())
}

/// Free data for the bi-quartic completion: λ linear, κ quadratic with
/// Bernstein ordinates (0, β, κ(1)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticParams {
    pub lambda23_1: f64,
    pub lambda43_1: f64,
    pub kappa23_1: f64,
    pub kappa43_1: f64,
    pub beta23: f64,
    pub beta43: f64,
}

/// Bi-quartic variant. Requires κ ≡ 0 on the given edges, and rejects β
/// values that violate the quartic compatibility relations.
pub fn complete_fourth_patch_quartic(
    r1: &BezierPatch,
    r2: &BezierPatch,
    r4: &BezierPatch,
    params: &QuarticParams,
    interior: InteriorRule,
) -> Result<(BezierPatch, TwistCheck), ConstructError> {
    let corner = analyze_corner(r1, r2, r4)?;
    if !corner.kappa_free() {
        return Err(ConstructError::Precondition(
            "bi-quartic completion needs κ ≡ 0 on the given edges".into(),
        ));
    }
    let (l12, l14) = (corner.lambda12, corner.lambda14);
    let (want23, want43) = quartic_betas(l12, l14, params.lambda23_1, params.lambda43_1);
    let bad = (params.beta23 - want23)
        .abs()
        .max((params.beta43 - want43).abs());
    if bad > CONSISTENCY_TOL {
        return Err(ConstructError::Rejected(format!(
            "β = ({}, {}) violates the quartic relations (need ({want23}, {want43}))",
            params.beta23, params.beta43
        )));
    }
    let band = |l0: f64, l1: f64, beta: f64, k1: f64| {
        let lambda = BernsteinPoly {
            coeffs: vec![l0, l1],
        };
        let kappa = BernsteinPoly {
            coeffs: vec![0.0, beta, k1],
        };
        move |b: &[Point3], i: &[Point3]| link_band(b, i, &lambda, &kappa, 3, 4)
    };
    let bands = assemble_bands(
        r2,
        r4,
        4,
        &band(l14, params.lambda23_1, params.beta23, params.kappa23_1),
        &band(l12, params.lambda43_1, params.beta43, params.kappa43_1),
    )?;
    let twist = twist_of(&bands, 4, corner.scale);
    check_bands(&bands, corner.scale, "bi-quartic corner")?;
    let mut p = bands.patch;
    apply_rule(&mut p, interior, |p| {
        parallelogram_interior(p);
        Ok(())
    })?;
    Ok((p, twist))
}
