use thiserror::Error;

use crate::bezier_core::{BezierPatch, Side};
use crate::construct::{
    analyze_corner, build_fillet, complete_fourth_patch, complete_fourth_patch_quartic, fill_hole,
    fill_hole_deg6, quartic_betas, solve_hole_params, ConstructError, FilletOptions,
    FourthPatchParams, InteriorRule, NinePatchRing, QuarticParams, RING_POSITIONS,
};

use super::document::SurfaceDocument;
use super::format::to_json_string;
use super::IoError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISCONTINUOUS: i32 = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl CommandError {
    /// Input and precondition problems are usage errors; a construction
    /// that cannot reach G1 is a continuity failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) | CommandError::Io(_) => EXIT_USAGE,
            CommandError::Construct(ConstructError::Precondition(_) | ConstructError::Core(_)) => {
                EXIT_USAGE
            }
            CommandError::Construct(_) => EXIT_DISCONTINUOUS,
        }
    }
}

fn json(v: &impl serde::Serialize) -> Result<String, CommandError> {
    to_json_string(v).map_err(|e| CommandError::Io(IoError::Schema(e.to_string())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CornerMode {
    #[default]
    Quintic,
    Quartic,
}

/// Options of `complete-4patch`. The quartic mode uses the far-end λ and κ
/// of `params` and takes β from `beta23`/`beta43`, falling back to the
/// values compatibility requires.
#[derive(Debug, Clone, Copy, Default)]
pub struct CornerOptions {
    pub mode: CornerMode,
    pub params: FourthPatchParams,
    pub beta23: Option<f64>,
    pub beta43: Option<f64>,
}

/// Complete the corner formed by patches named "1", "2" and "4". Returns a
/// document with patches 1 to 4, the four edges and the vertex, plus the
/// construction report as JSON.
pub fn complete_corner_document(
    doc: &SurfaceDocument,
    opts: &CornerOptions,
) -> Result<(SurfaceDocument, String), CommandError> {
    let (r1, r2, r4) = (doc.patch("1")?, doc.patch("2")?, doc.patch("4")?);
    let (r3, report) = match opts.mode {
        CornerMode::Quintic => {
            if opts.beta23.is_some() || opts.beta43.is_some() {
                return Err(CommandError::Usage(
                    "--beta23/--beta43 apply to the quartic mode only".into(),
                ));
            }
            let (p, r) = complete_fourth_patch(&r1, &r2, &r4, &opts.params, InteriorRule::Default)?;
            (p, json(&r)?)
        }
        CornerMode::Quartic => {
            let p = &opts.params;
            if p.alpha23.is_some() || p.alpha43.is_some() || p.beta2_23 != 0.0 || p.beta2_43 != 0.0
            {
                return Err(CommandError::Usage(
                    "α and β2 choices apply to the quintic mode only".into(),
                ));
            }
            let corner = analyze_corner(&r1, &r2, &r4)?;
            let l23 = p.lambda23_1.unwrap_or(corner.lambda14);
            let l43 = p.lambda43_1.unwrap_or(corner.lambda12);
            let (b23, b43) = quartic_betas(corner.lambda12, corner.lambda14, l23, l43);
            let q = QuarticParams {
                lambda23_1: l23,
                lambda43_1: l43,
                kappa23_1: p.kappa23_1,
                kappa43_1: p.kappa43_1,
                beta23: opts.beta23.unwrap_or(b23),
                beta43: opts.beta43.unwrap_or(b43),
            };
            let (p, twist) =
                complete_fourth_patch_quartic(&r1, &r2, &r4, &q, InteriorRule::Default)?;
            (p, json(&twist)?)
        }
    };
    let mut out = SurfaceDocument::new();
    for (name, p) in [("1", &r1), ("2", &r2), ("3", &r3), ("4", &r4)] {
        out.push_patch(name, p);
    }
    out.push_edge("1", Side::U1, "2", Side::U0);
    out.push_edge("4", Side::U1, "3", Side::U0);
    out.push_edge("1", Side::V1, "4", Side::V0);
    out.push_edge("2", Side::V1, "3", Side::V0);
    out.push_vertex(["1", "2", "3", "4"]);
    Ok((out, report))
}

/// The ring around the hole from patches named "1" to "9" without "5".
pub fn hole_ring_from_document(doc: &SurfaceDocument) -> Result<NinePatchRing, CommandError> {
    let mut ps = Vec::with_capacity(8);
    for pos in RING_POSITIONS {
        ps.push(doc.patch(&pos.to_string())?);
    }
    let ps: [BezierPatch; 8] = ps.try_into().expect("eight ring patches");
    Ok(NinePatchRing::new(ps)?)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HoleOptions {
    pub deg6: bool,
    /// α on sides 2, 4, 6, 8.
    pub alphas: Option<[f64; 4]>,
}

fn grid_name(iu: usize, iv: usize) -> String {
    (3 * iu + iv + 1).to_string()
}

/// Fill the hole of the ring in `doc` and return all nine patches with
/// the twelve inner edges and the four hole corners.
pub fn fill_hole_document(
    doc: &SurfaceDocument,
    opts: &HoleOptions,
) -> Result<(SurfaceDocument, String), CommandError> {
    let ring = hole_ring_from_document(doc)?;
    let (p5, report) = if opts.deg6 {
        if opts.alphas.is_some() {
            return Err(CommandError::Usage(
                "--alpha applies to the bi-quintic fill only".into(),
            ));
        }
        fill_hole_deg6(&ring, InteriorRule::Default)?
    } else {
        let params = solve_hole_params(&ring, opts.alphas);
        fill_hole(&ring, Some(params), InteriorRule::Default)?
    };
    let mut out = SurfaceDocument::new();
    for pos in 1..=9 {
        let p = if pos == 5 {
            p5.clone()
        } else {
            ring.patch(pos).expect("ring position").clone()
        };
        out.push_patch(pos.to_string(), &p);
    }
    for iu in 0..3 {
        for iv in 0..3 {
            if iu < 2 {
                out.push_edge(
                    &grid_name(iu, iv),
                    Side::U1,
                    &grid_name(iu + 1, iv),
                    Side::U0,
                );
            }
            if iv < 2 {
                out.push_edge(
                    &grid_name(iu, iv),
                    Side::V1,
                    &grid_name(iu, iv + 1),
                    Side::V0,
                );
            }
        }
    }
    for iu in 0..2 {
        for iv in 0..2 {
            let n = [
                grid_name(iu, iv),
                grid_name(iu + 1, iv),
                grid_name(iu + 1, iv + 1),
                grid_name(iu, iv + 1),
            ];
            out.push_vertex([&n[0], &n[1], &n[2], &n[3]]);
        }
    }
    Ok((out, json(&report)?))
}

/// Fillet between the first `n` patches of two strips, in document order.
/// Output patches are named a0.., f0.., b0...
pub fn fillet_document(
    a: &SurfaceDocument,
    b: &SurfaceDocument,
    n: usize,
    opts: &FilletOptions,
) -> Result<(SurfaceDocument, String), CommandError> {
    if n == 0 {
        return Err(CommandError::Usage("-n must be at least 1".into()));
    }
    let strip = |d: &SurfaceDocument, which: &str| -> Result<Vec<BezierPatch>, CommandError> {
        if d.patches.len() < n {
            return Err(CommandError::Usage(format!(
                "strip {which} has {} patches, need {n}",
                d.patches.len()
            )));
        }
        Ok(d.bezier_patches()?.into_iter().take(n).collect())
    };
    let (sa, sb) = (strip(a, "a")?, strip(b, "b")?);
    let f = build_fillet(&sa, &sb, opts)?;
    let mut out = SurfaceDocument::new();
    for (prefix, ps) in [("a", &sa), ("f", &f.patches), ("b", &sb)] {
        for (k, p) in ps.iter().enumerate() {
            out.push_patch(format!("{prefix}{k}"), p);
        }
    }
    let nm = |p: &str, k: usize| format!("{p}{k}");
    for k in 0..n {
        out.push_edge(&nm("a", k), Side::V1, &nm("f", k), Side::V0);
        out.push_edge(&nm("f", k), Side::V1, &nm("b", k), Side::V0);
    }
    for p in ["a", "f", "b"] {
        for k in 0..n.saturating_sub(1) {
            out.push_edge(&nm(p, k), Side::U1, &nm(p, k + 1), Side::U0);
        }
    }
    for k in 0..n.saturating_sub(1) {
        for (lo, hi) in [("a", "f"), ("f", "b")] {
            let v = [nm(lo, k), nm(lo, k + 1), nm(hi, k + 1), nm(hi, k)];
            out.push_vertex([&v[0], &v[1], &v[2], &v[3]]);
        }
    }
    Ok((out, json(&f)?))
}
