use serde::Serialize;

use crate::bezier_core::BezierPatch;

use super::hole::{fill_hole, fill_hole_deg6, HoleFillReport, HoleMode};
use super::ring::NinePatchRing;
use super::{ConstructError, InteriorRule};

#[derive(Debug, Clone, Copy)]
pub struct FilletOptions {
    /// Link from strip a into each bridge.
    pub lambda_a: f64,
    /// Link from strip b into each bridge.
    pub lambda_b: f64,
    pub mode: HoleMode,
    pub interior: InteriorRule,
}

impl Default for FilletOptions {
    fn default() -> Self {
        Self {
            lambda_a: 1.0,
            lambda_b: 1.0,
            mode: HoleMode::Quintic,
            interior: InteriorRule::Default,
        }
    }
}

/// The fillet row: bi-cubic bridges at even positions, hole fills at odd.
#[derive(Debug, Clone, Serialize)]
pub struct Fillet {
    #[serde(skip)]
    pub patches: Vec<BezierPatch>,
    pub fills: Vec<HoleFillReport>,
}

/// Bi-cubic patch spanning from the v = 1 side of `a` to the v = 0 side of
/// `b` with constant links and κ ≡ 0 on both joins.
fn bridge(
    a: &BezierPatch,
    b: &BezierPatch,
    la: f64,
    lb: f64,
) -> Result<BezierPatch, ConstructError> {
    Ok(BezierPatch::from_fn(3, 3, |i, j| match j {
        0 => a.get(i, 3),
        1 => a.get(i, 3) + (a.get(i, 3) - a.get(i, 2)) * la,
        2 => b.get(i, 0) - (b.get(i, 1) - b.get(i, 0)) * lb,
        _ => b.get(i, 0),
    })?)
}

/// Polynomial continuation of `p` over u in [1, 2].
fn phantom(p: &BezierPatch) -> BezierPatch {
    p.restrict(1.0, 2.0, 0.0, 1.0)
}

/// Join two strips of bi-cubic patches, `a` below and `b` above, by a row
/// of patches. Strip neighbors meet along u and must be G1 with constant λ
/// and κ ≡ 0; `a` faces the fillet with its v = 1 side and `b` with v = 0.
pub fn build_fillet(
    a: &[BezierPatch],
    b: &[BezierPatch],
    opts: &FilletOptions,
) -> Result<Fillet, ConstructError> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Err(ConstructError::Precondition(format!(
            "strips must be non-empty and equally long ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    for p in a.iter().chain(b) {
        if p.degree_u() != 3 || p.degree_v() != 3 {
            return Err(ConstructError::Precondition(
                "strip patches must be bi-cubic".into(),
            ));
        }
    }
    if opts.lambda_a <= 0.0 || opts.lambda_b <= 0.0 {
        return Err(ConstructError::Precondition(
            "bridge links must be positive".into(),
        ));
    }
    let mut out: Vec<Option<BezierPatch>> = vec![None; n];
    for k in (0..n).step_by(2) {
        out[k] = Some(bridge(&a[k], &b[k], opts.lambda_a, opts.lambda_b)?);
    }
    let mut fills = Vec::new();
    for k in (1..n).step_by(2) {
        let (a_next, b_next) = if k + 1 < n {
            (a[k + 1].clone(), b[k + 1].clone())
        } else {
            (phantom(&a[k]), phantom(&b[k]))
        };
        let bridge_prev = out[k - 1].clone().expect("bridge at even position");
        let bridge_next = match out.get(k + 1) {
            Some(Some(p)) => p.clone(),
            _ => bridge(&a_next, &b_next, opts.lambda_a, opts.lambda_b)?,
        };
        let ring = NinePatchRing::new([
            a[k - 1].clone(),
            bridge_prev,
            b[k - 1].clone(),
            a[k].clone(),
            b[k].clone(),
            a_next,
            bridge_next,
            b_next,
        ])
        .map_err(|e| ConstructError::Precondition(format!("fillet position {k}: {e}")))?;
        let (p, report) = match opts.mode {
            HoleMode::Quintic => fill_hole(&ring, None, opts.interior)?,
            HoleMode::Sextic => fill_hole_deg6(&ring, opts.interior)?,
        };
        out[k] = Some(p);
        fills.push(report);
    }
    Ok(Fillet {
        patches: out
            .into_iter()
            .map(|p| p.expect("every position filled"))
            .collect(),
        fills,
    })
}
