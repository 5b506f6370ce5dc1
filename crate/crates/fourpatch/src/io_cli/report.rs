use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bezier_core::{BezierPatch, Side};
use crate::gcont::{
    check_g1_edge, check_g2_edge, check_vertex_g1, check_vertex_g2, CompatReport, CornerConfig,
    EdgeReport, Tolerances,
};

use super::document::SurfaceDocument;
use super::IoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    G1,
    G2,
}

impl Continuity {
    pub fn as_str(self) -> &'static str {
        match self {
            Continuity::G1 => "g1",
            Continuity::G2 => "g2",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeEntry {
    pub a: String,
    pub a_side: Side,
    pub b: String,
    pub b_side: Side,
    pub reversed: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<EdgeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexEntry {
    pub patches: [String; 4],
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CompatReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Everything a `check-g1` / `check-g2` run found. Field order is fixed so
/// the JSON is byte-stable.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub version: u32,
    pub check: Continuity,
    pub tolerances: Tolerances,
    pub fit_degrees: [usize; 2],
    pub edges: Vec<EdgeEntry>,
    pub vertices: Vec<VertexEntry>,
    pub pass: bool,
}

/// Check every edge and vertex listed in `doc`. Vertex conditions are
/// evaluated at the tolerance of the chosen order.
pub fn check_document(
    doc: &SurfaceDocument,
    order: Continuity,
    tol: &Tolerances,
    fit_degrees: (usize, usize),
) -> Result<ReportDocument, IoError> {
    doc.validate()?;
    let patches = doc.bezier_patches()?;
    let corrs = doc.correspondences()?;
    let mut edges = Vec::with_capacity(corrs.len());
    for (rec, c) in doc.edges.iter().zip(&corrs) {
        let (a, b) = (&patches[c.a], &patches[c.b]);
        let r = match order {
            Continuity::G1 => check_g1_edge(a, b, c, tol),
            Continuity::G2 => check_g2_edge(a, b, c, tol),
        };
        let (pass, result, error) = match r {
            Ok(r) => (r.pass, Some(r), None),
            Err(e) => (false, None, Some(e.to_string())),
        };
        edges.push(EdgeEntry {
            a: rec.a.clone(),
            a_side: rec.a_side,
            b: rec.b.clone(),
            b_side: rec.b_side,
            reversed: rec.reversed,
            pass,
            result,
            error,
        });
    }
    let mut vertices = Vec::new();
    for (rec, idx) in doc.vertices.iter().zip(doc.vertex_indices()?) {
        let four: [BezierPatch; 4] = idx.map(|k| patches[k].clone());
        let r = match order {
            Continuity::G1 => {
                CornerConfig::new(four, fit_degrees, tol).and_then(|c| check_vertex_g1(&c, tol.g1))
            }
            Continuity::G2 => CornerConfig::new(four, fit_degrees, tol)
                .and_then(|c| c.with_g2(tol))
                .and_then(|c| check_vertex_g2(&c, tol.g2)),
        };
        let (pass, result, error) = match r {
            Ok(r) => (r.pass, Some(r), None),
            Err(e) => (false, None, Some(e.to_string())),
        };
        vertices.push(VertexEntry {
            patches: rec.patches.clone(),
            pass,
            result,
            error,
        });
    }
    let pass = edges.iter().all(|e| e.pass) && vertices.iter().all(|v| v.pass);
    Ok(ReportDocument {
        version: 1,
        check: order,
        tolerances: *tol,
        fit_degrees: [fit_degrees.0, fit_degrees.1],
        edges,
        vertices,
        pass,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Plain-text residual table.
pub fn render_table(r: &ReportDocument) -> String {
    let mut s = String::new();
    let t = &r.tolerances;
    let _ = writeln!(
        s,
        "check {}  tol g0 {:.0e}  g1 {:.0e}  angle {:.0e}  g2 {:.0e}",
        r.check.as_str(),
        t.g0,
        t.g1,
        t.normal_angle,
        t.g2
    );
    let oracle = match r.check {
        Continuity::G1 => "normal angle",
        Continuity::G2 => "curvature",
    };
    let _ = writeln!(
        s,
        "{:<24} {:>11} {:>11} {:>13}  verdict",
        "edge", "g0", "link", oracle
    );
    for e in &r.edges {
        let name = format!(
            "{}.{} ~ {}.{}{}",
            e.a,
            e.a_side.as_str(),
            e.b,
            e.b_side.as_str(),
            if e.reversed { " (rev)" } else { "" }
        );
        match (&e.result, &e.error) {
            (Some(x), _) => {
                let _ = writeln!(
                    s,
                    "{name:<24} {:>11.3e} {:>11.3e} {:>13.3e}  {}",
                    x.g0_deviation,
                    x.link_residual,
                    x.oracle_value,
                    verdict(e.pass)
                );
                for w in &x.warnings {
                    let _ = writeln!(s, "    warning: {w}");
                }
            }
            (None, err) => {
                let _ = writeln!(
                    s,
                    "{name:<24} error: {}  FAIL",
                    err.as_deref().unwrap_or("unknown")
                );
            }
        }
    }
    if !r.vertices.is_empty() {
        let _ = writeln!(
            s,
            "{:<24} {:>11} {:>11} {:>13}  verdict",
            "vertex", "tangent", "product", "curvature"
        );
        for v in &r.vertices {
            let name = v.patches.join(",");
            match (&v.result, &v.error) {
                (Some(x), _) => {
                    let g2 = x
                        .g2_residuals
                        .map(|g| format!("{:.3e}", max_abs(&g)))
                        .unwrap_or_else(|| "-".into());
                    let _ = writeln!(
                        s,
                        "{name:<24} {:>11.3e} {:>11.3e} {:>13}  {}",
                        max_abs(&x.g1_residuals),
                        x.lambda_product_residual,
                        g2,
                        verdict(v.pass)
                    );
                }
                (None, err) => {
                    let _ = writeln!(
                        s,
                        "{name:<24} error: {}  FAIL",
                        err.as_deref().unwrap_or("unknown")
                    );
                }
            }
        }
    }
    let _ = writeln!(s, "overall {}", verdict(r.pass));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier_core::Point3;
    use crate::io_cli::to_json_string;

    fn flat_pair() -> SurfaceDocument {
        let a = BezierPatch::from_fn(3, 3, |i, j| Point3::new(i as f64, j as f64, 0.0)).unwrap();
        let b = a.map_points(|p| p + Point3::new(3.0, 0.0, 0.0));
        let mut d = SurfaceDocument::new();
        d.push_patch("a", &a);
        d.push_patch("b", &b);
        d.push_edge("a", Side::U1, "b", Side::U0);
        d
    }

    #[test]
    fn flat_pair_passes_and_is_stable() {
        let d = flat_pair();
        let r1 = check_document(&d, Continuity::G1, &Tolerances::default(), (8, 8)).unwrap();
        assert!(r1.pass);
        let r2 = check_document(&d, Continuity::G1, &Tolerances::default(), (8, 8)).unwrap();
        assert_eq!(to_json_string(&r1).unwrap(), to_json_string(&r2).unwrap());
        assert_eq!(render_table(&r1), render_table(&r2));
        assert!(render_table(&r1).ends_with("overall PASS\n"));
    }

    #[test]
    fn gap_is_reported_not_thrown() {
        let mut d = flat_pair();
        let moved = d
            .patch("b")
            .unwrap()
            .map_points(|p| p + Point3::new(0.5, 0.0, 0.0));
        d.patches[1] = super::super::PatchRecord::from_patch("b", &moved);
        let r = check_document(&d, Continuity::G1, &Tolerances::default(), (8, 8)).unwrap();
        assert!(!r.pass);
        assert!(r.edges[0].error.is_some());
    }
}
