use serde::Serialize;

use crate::bezier_core::{Side, Surface};

use super::link::{solve_edge_link, solve_g2_link, EdgeLink};
use super::{EdgeCorrespondence, GcontError, Tolerances, SOLVE_SAMPLES};

/// Link values at the common vertex, canonical indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct VertexValues {
    pub l12: f64,
    pub k12: f64,
    pub l43: f64,
    pub k43: f64,
    pub l14: f64,
    pub k14: f64,
    pub l23: f64,
    pub k23: f64,
}

/// Derivatives of λ, κ at the vertex plus μ, ν values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct VertexSecondOrder {
    pub dl12: f64,
    pub dk12: f64,
    pub dl43: f64,
    pub dk43: f64,
    pub dl14: f64,
    pub dk14: f64,
    pub dl23: f64,
    pub dk23: f64,
    pub m12: f64,
    pub n12: f64,
    pub m43: f64,
    pub n43: f64,
    pub m14: f64,
    pub n14: f64,
    pub m23: f64,
    pub n23: f64,
}

/// The four tangent-plane compatibility residuals (signed).
pub fn tangent_residuals(v: &VertexValues) -> [f64; 4] {
    [
        v.k12 - v.l14 * v.k43,
        v.k14 - v.l12 * v.k23,
        v.l12 - v.l43 - v.k14 * v.k43,
        v.l14 - v.l23 - v.k12 * v.k23,
    ]
}

/// Product identity residual λ12 λ23 − λ14 λ43 (signed).
pub fn lambda_product_residual(v: &VertexValues) -> f64 {
    v.l12 * v.l23 - v.l14 * v.l43
}

/// The six curvature compatibility residuals (signed).
pub fn curvature_residuals(v: &VertexValues, s: &VertexSecondOrder) -> [f64; 6] {
    [
        2.0 * v.l43 * s.dl14 * v.k43 - s.n12 + s.n43 * v.l14 + s.m14 * v.k43 * v.k43,
        2.0 * v.l23 * s.dl12 * v.k23 - s.n14 + s.n23 * v.l12 + s.m12 * v.k23 * v.k23,
        2.0 * v.l43 * v.k43 * s.dk14 - s.m12 + s.m43 + s.n43 * v.k14 + s.n14 * v.k43 * v.k43,
        2.0 * v.l23 * v.k23 * s.dk12 - s.m14 + s.m23 + s.n23 * v.k12 + s.n12 * v.k23 * v.k23,
        s.dl43 - v.l23 * s.dl12 + v.l43 * s.dk14 - v.l12 * s.dk23 + v.k14 * s.dk43 - s.m12 * v.k23
            + s.n14 * v.k43,
        s.dl23 - v.l43 * s.dl14 + v.l23 * s.dk12 - v.l14 * s.dk43 + v.k12 * s.dk23 - s.m14 * v.k43
            + s.n12 * v.k23,
    ]
}

/// Residuals and verdicts at one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct CompatReport {
    pub values: VertexValues,
    pub g1_residuals: [f64; 4],
    pub lambda_product_residual: f64,
    pub g2_residuals: Option<[f64; 6]>,
    pub second_order: Option<VertexSecondOrder>,
    pub g1_pass: [bool; 4],
    pub lambda_product_pass: bool,
    pub g2_pass: Option<[bool; 6]>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Canonical correspondences: edges (1,2), (4,3), (1,4), (2,3).
/// Patch indices 0..4 stand for patches 1..4.
pub fn canonical_edges() -> [EdgeCorrespondence; 4] {
    [
        EdgeCorrespondence::new(0, Side::U1, 1, Side::U0, false),
        EdgeCorrespondence::new(3, Side::U1, 2, Side::U0, false),
        EdgeCorrespondence::new(0, Side::V1, 3, Side::V0, false),
        EdgeCorrespondence::new(1, Side::V1, 2, Side::V0, false),
    ]
}

/// Edge parameter of the vertex on each canonical edge.
const VERTEX_AT_ONE: [bool; 4] = [true, false, true, false];

/// Four patches around a vertex V: 1 lower-left with V = r1(1,1), 2 to its
/// right, 4 above it, 3 diagonal with V = r3(0,0).
#[derive(Debug, Clone)]
pub struct CornerConfig<S> {
    /// Patches 1, 2, 3, 4 in that order.
    pub patches: [S; 4],
    /// Links on edges (1,2), (4,3), (1,4), (2,3).
    pub links: [EdgeLink; 4],
}

impl<S: Surface> CornerConfig<S> {
    /// Solve all four edge links. Fails if any edge is not G0.
    pub fn new(
        patches: [S; 4],
        fit_degrees: (usize, usize),
        tol: &Tolerances,
    ) -> Result<Self, GcontError> {
        let edges = canonical_edges();
        let mut links = Vec::with_capacity(4);
        for e in &edges {
            links.push(solve_edge_link(
                &patches[e.a],
                &patches[e.b],
                e,
                SOLVE_SAMPLES,
                fit_degrees,
                tol,
            )?);
        }
        let links: [EdgeLink; 4] = links.try_into().expect("four links");
        Ok(Self { patches, links })
    }

    /// Add the second-order link data on all four edges.
    pub fn with_g2(mut self, tol: &Tolerances) -> Result<Self, GcontError> {
        let edges = canonical_edges();
        for (k, e) in edges.iter().enumerate() {
            let l = solve_g2_link(
                &self.patches[e.a],
                &self.patches[e.b],
                e,
                &self.links[k],
                SOLVE_SAMPLES,
                tol,
            )?;
            self.links[k] = l;
        }
        Ok(self)
    }

    /// λ, κ at V, taken from the exact endpoint samples.
    pub fn vertex_values(&self) -> VertexValues {
        let s = |k: usize| self.links[k].end_sample(VERTEX_AT_ONE[k]);
        VertexValues {
            l12: s(0).lambda,
            k12: s(0).kappa,
            l43: s(1).lambda,
            k43: s(1).kappa,
            l14: s(2).lambda,
            k14: s(2).kappa,
            l23: s(3).lambda,
            k23: s(3).kappa,
        }
    }

    /// λ', κ' from the fitted polynomials; μ, ν from the endpoint samples.
    pub fn second_order(&self) -> Option<VertexSecondOrder> {
        let d = |k: usize| {
            let t = if VERTEX_AT_ONE[k] { 1.0 } else { 0.0 };
            let l = &self.links[k];
            let s = l.end_sample(VERTEX_AT_ONE[k]);
            Some((
                l.lambda.eval_derivative(t),
                l.kappa.eval_derivative(t),
                s.mu?,
                s.nu?,
            ))
        };
        let (dl12, dk12, m12, n12) = d(0)?;
        let (dl43, dk43, m43, n43) = d(1)?;
        let (dl14, dk14, m14, n14) = d(2)?;
        let (dl23, dk23, m23, n23) = d(3)?;
        Some(VertexSecondOrder {
            dl12,
            dk12,
            dl43,
            dk43,
            dl14,
            dk14,
            dl23,
            dk23,
            m12,
            n12,
            m43,
            n43,
            m14,
            n14,
            m23,
            n23,
        })
    }
}

fn check_lambdas(v: &VertexValues, tol: &Tolerances) -> Result<(), GcontError> {
    for l in [v.l12, v.l43, v.l14, v.l23] {
        if l.abs() < tol.lambda_min {
            return Err(GcontError::DegenerateLink {
                t: f64::NAN,
                lambda: l,
            });
        }
    }
    Ok(())
}

/// Evaluate the tangent-plane vertex conditions from link values.
pub fn vertex_g1_report(
    v: &VertexValues,
    tol: f64,
    lambda_min: f64,
) -> Result<CompatReport, GcontError> {
    check_lambdas(
        v,
        &Tolerances {
            lambda_min,
            ..Tolerances::default()
        },
    )?;
    let g1 = tangent_residuals(v).map(f64::abs);
    let prod = lambda_product_residual(v).abs();
    let g1_pass = g1.map(|r| r < tol);
    let lambda_product_pass = prod < tol;
    Ok(CompatReport {
        values: *v,
        g1_residuals: g1,
        lambda_product_residual: prod,
        g2_residuals: None,
        second_order: None,
        g1_pass,
        lambda_product_pass,
        g2_pass: None,
        tolerance: tol,
        pass: g1_pass.iter().all(|&p| p) && lambda_product_pass,
    })
}

pub fn check_vertex_g1<S: Surface>(
    c: &CornerConfig<S>,
    tol: f64,
) -> Result<CompatReport, GcontError> {
    vertex_g1_report(&c.vertex_values(), tol, Tolerances::default().lambda_min)
}

/// Requires `c.with_g2` to have been applied.
pub fn check_vertex_g2<S: Surface>(
    c: &CornerConfig<S>,
    tol: f64,
) -> Result<CompatReport, GcontError> {
    let v = c.vertex_values();
    check_lambdas(&v, &Tolerances::default())?;
    let s = c.second_order().ok_or(GcontError::MissingSecondOrder)?;
    Ok(vertex_g2_report(&v, &s, tol))
}

pub fn vertex_g2_report(v: &VertexValues, s: &VertexSecondOrder, tol: f64) -> CompatReport {
    let g2 = curvature_residuals(v, s).map(f64::abs);
    let g2_pass = g2.map(|r| r < tol);
    let g1 = tangent_residuals(v).map(f64::abs);
    CompatReport {
        values: *v,
        g1_residuals: g1,
        lambda_product_residual: lambda_product_residual(v).abs(),
        g2_residuals: Some(g2),
        second_order: Some(*s),
        g1_pass: g1.map(|r| r < tol),
        lambda_product_pass: lambda_product_residual(v).abs() < tol,
        g2_pass: Some(g2_pass),
        tolerance: tol,
        pass: g2_pass.iter().all(|&p| p),
    }
}
