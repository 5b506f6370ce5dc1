use serde::Serialize;

use crate::bezier_core::{Surface, Vec3};

use super::frame::{edge_frame, project2, EdgeFrame};
use super::link::{g0_deviation, sample_params, solve_edge_link, solve_g2_link, EdgeLink};
use super::{EdgeCorrespondence, GcontError, Tolerances, SOLVE_SAMPLES, SWEEP_SAMPLES};

/// Outcome of the two independent tests run on one edge.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeReport {
    pub g0_deviation: f64,
    /// Largest normalized out-of-plane residual of the link equation.
    pub link_residual: f64,
    pub link_pass: bool,
    /// G1: largest angle between unit normals (radians).
    /// G2: largest normalized normal-curvature mismatch.
    pub oracle_value: f64,
    pub oracle_pass: bool,
    pub pass: bool,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub link: Option<EdgeLink>,
}

/// Default link fit degrees used by the checkers.
pub const DEFAULT_FIT_DEGREES: (usize, usize) = (8, 8);

fn unit_normal(e1: &Vec3, e2: &Vec3) -> Vec3 {
    e1.cross(e2).normalize()
}

/// Angle between two lines, robust for tiny angles.
fn line_angle(n1: &Vec3, n2: &Vec3) -> f64 {
    n1.cross(n2).norm().atan2(n1.dot(n2).abs())
}

/// Largest angle between the tangent planes of a and b over `n` samples.
pub fn max_normal_angle(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    n: usize,
) -> f64 {
    sample_params(n)
        .into_iter()
        .map(|t| {
            let f = edge_frame(a, b, corr, t);
            let na = unit_normal(&f.cross_a, &f.tangent_a);
            let nb = unit_normal(&f.cross_b, &f.tangent_b);
            line_angle(&na, &nb)
        })
        .fold(0.0, f64::max)
}

/// Tangent-plane continuity of one edge: link test plus normal oracle.
pub fn check_g1_edge(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    tol: &Tolerances,
) -> Result<EdgeReport, GcontError> {
    let g0 = g0_deviation(a, b, corr, SWEEP_SAMPLES);
    let link = solve_edge_link(a, b, corr, SOLVE_SAMPLES, DEFAULT_FIT_DEGREES, tol)?;
    let link_residual = link.max_g1_residual();
    let angle = max_normal_angle(a, b, corr, SWEEP_SAMPLES);
    let link_pass = link_residual < tol.g1;
    let oracle_pass = angle < tol.normal_angle;
    Ok(EdgeReport {
        g0_deviation: g0,
        link_residual,
        link_pass,
        oracle_value: angle,
        oracle_pass,
        pass: link_pass && oracle_pass && g0 <= tol.g0,
        warnings: link.warnings.clone(),
        link: Some(link),
    })
}

/// Normal curvature of the patch whose frame is (c, t, cc, ct, tt) in the
/// tangent direction `w`, measured against the unit normal `n`.
fn normal_curvature(
    w: &Vec3,
    c: &Vec3,
    t: &Vec3,
    cc: &Vec3,
    ct: &Vec3,
    tt: &Vec3,
    n: &Vec3,
    scale: f64,
) -> Option<f64> {
    let (x, y, _) = project2(w, c, t, scale, 0.0)?;
    let first = (c * x + t * y).norm_squared();
    let second = n.dot(&(cc * (x * x) + ct * (2.0 * x * y) + tt * (y * y)));
    Some(second / first)
}

/// Normal curvatures of a and b in three pairwise independent directions.
fn curvature_mismatch(f: &EdgeFrame, scale: f64) -> f64 {
    let na = unit_normal(&f.cross_a, &f.tangent_a);
    let nb0 = unit_normal(&f.cross_b, &f.tangent_b);
    let nb = if nb0.dot(&na) < 0.0 { -nb0 } else { nb0 };
    let t1 = f.tangent_a.normalize();
    let t2 = na.cross(&t1);
    let t3 = (t1 + t2) / 2f64.sqrt();
    [t1, t2, t3]
        .iter()
        .map(|w| {
            let ka = normal_curvature(
                w,
                &f.cross_a,
                &f.tangent_a,
                &f.a_cc,
                &f.a_ct,
                &f.a_tt,
                &na,
                scale,
            );
            let kb = normal_curvature(
                w,
                &f.cross_b,
                &f.tangent_b,
                &f.b_cc,
                &f.b_ct,
                &f.b_tt,
                &nb,
                scale,
            );
            match (ka, kb) {
                (Some(ka), Some(kb)) => (ka - kb).abs() * scale,
                _ => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max)
}

/// Curvature continuity of one edge: second-order link test plus
/// three-direction normal-curvature oracle. Requires G1 to hold.
pub fn check_g2_edge(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    tol: &Tolerances,
) -> Result<EdgeReport, GcontError> {
    let g1 = check_g1_edge(a, b, corr, tol)?;
    let first = g1.link.as_ref().expect("g1 check keeps its link");
    let link = solve_g2_link(a, b, corr, first, SOLVE_SAMPLES, tol)?;
    let link_residual = link.max_g2_residual().unwrap_or(f64::INFINITY);
    let scale = a.scale().max(b.scale());
    let mismatch = sample_params(SOLVE_SAMPLES)
        .into_iter()
        .map(|t| curvature_mismatch(&edge_frame(a, b, corr, t), scale))
        .fold(0.0, f64::max);
    let link_pass = link_residual < tol.g2;
    let oracle_pass = mismatch < tol.g2;
    let mut warnings = g1.warnings.clone();
    if !g1.pass {
        warnings.push("edge is not G1; curvature results are not meaningful".into());
    }
    Ok(EdgeReport {
        g0_deviation: g1.g0_deviation,
        link_residual,
        link_pass,
        oracle_value: mismatch,
        oracle_pass,
        pass: g1.pass && link_pass && oracle_pass,
        warnings,
        link: Some(link),
    })
}
