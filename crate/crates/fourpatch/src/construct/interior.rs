use crate::bezier_core::BezierPatch;

use super::{ConstructError, CONSISTENCY_TOL};

/// How control points not fixed by continuity are chosen.
#[derive(Debug, Clone, Copy, Default)]
pub enum InteriorRule {
    /// The scheme's own rule (see [`default_interior`] and the corner
    /// completion).
    #[default]
    Default,
    /// Caller-supplied; receives the patch with all constrained points set.
    Custom(fn(&mut BezierPatch)),
}

/// Twist-compatible interior of a patch whose two outer bands are fixed on
/// all four sides. Supports bi-degree (5,5) and (6,6).
pub fn default_interior(p: &mut BezierPatch) -> Result<(), ConstructError> {
    match (p.degree_u(), p.degree_v()) {
        (5, 5) => {
            let q = |p: &BezierPatch, i, j| p.get(i, j);
            let v22 = q(p, 2, 1) + q(p, 1, 2) - q(p, 1, 1);
            let v32 = q(p, 3, 1) + q(p, 4, 2) - q(p, 4, 1);
            let v23 = q(p, 2, 4) + q(p, 1, 3) - q(p, 1, 4);
            let v33 = q(p, 3, 4) + q(p, 4, 3) - q(p, 4, 4);
            p.set(2, 2, v22);
            p.set(3, 2, v32);
            p.set(2, 3, v23);
            p.set(3, 3, v33);
            Ok(())
        }
        (6, 6) => sextic_interior(p),
        (du, dv) => Err(ConstructError::Precondition(format!(
            "no default interior for bi-degree ({du},{dv})"
        ))),
    }
}

fn sextic_interior(p: &mut BezierPatch) -> Result<(), ConstructError> {
    let g = |p: &BezierPatch, i: usize, j: usize| p.get(i, j);
    let v22 = g(p, 2, 1) + g(p, 1, 2) - g(p, 1, 1);
    let v24 = g(p, 2, 5) + g(p, 1, 4) - g(p, 1, 5);
    let v42 = g(p, 4, 1) + g(p, 5, 2) - g(p, 5, 1);
    let v44 = g(p, 4, 5) + g(p, 5, 4) - g(p, 5, 5);
    p.set(2, 2, v22);
    p.set(2, 4, v24);
    p.set(4, 2, v42);
    p.set(4, 4, v44);

    let v23 = g(p, 1, 3) + (v22 + v24) * 0.5 - (g(p, 1, 2) + g(p, 1, 4)) * 0.5;
    let v32 = g(p, 3, 1) + (v22 + v42) * 0.5 - (g(p, 2, 1) + g(p, 4, 1)) * 0.5;
    let v43 = g(p, 5, 3) + (v42 + v44) * 0.5 - (g(p, 5, 2) + g(p, 5, 4)) * 0.5;
    let v34 = g(p, 3, 5) + (v24 + v44) * 0.5 - (g(p, 2, 5) + g(p, 4, 5)) * 0.5;

    // each mid-edge point has a second expression through the band corners
    let alt = [
        (
            v23,
            g(p, 1, 3) + (g(p, 2, 1) + g(p, 2, 5)) * 0.5 - (g(p, 1, 1) + g(p, 1, 5)) * 0.5,
        ),
        (
            v32,
            g(p, 3, 1) + (g(p, 1, 2) + g(p, 5, 2)) * 0.5 - (g(p, 1, 1) + g(p, 5, 1)) * 0.5,
        ),
        (
            v43,
            g(p, 5, 3) + (g(p, 4, 1) + g(p, 4, 5)) * 0.5 - (g(p, 5, 1) + g(p, 5, 5)) * 0.5,
        ),
        (
            v34,
            g(p, 3, 5) + (g(p, 1, 4) + g(p, 5, 4)) * 0.5 - (g(p, 1, 5) + g(p, 5, 5)) * 0.5,
        ),
    ];
    let scale = p.bbox_diagonal().max(f64::MIN_POSITIVE);
    let dev = alt.iter().map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
    if dev > CONSISTENCY_TOL {
        return Err(ConstructError::Inconsistent {
            what: "sextic interior".into(),
            deviation: dev,
        });
    }
    p.set(2, 3, v23);
    p.set(3, 2, v32);
    p.set(4, 3, v43);
    p.set(3, 4, v34);
    let v33 = (v23 + v43 + v32 + v34) * 0.5 - (v22 + v42 + v24 + v44) * 0.25;
    p.set(3, 3, v33);
    Ok(())
}

/// q_ij = q_i1 + q_1j - q_11 for i, j >= 2.
pub(crate) fn parallelogram_interior(p: &mut BezierPatch) {
    let q11 = p.get(1, 1);
    for i in 2..=p.degree_u() {
        for j in 2..=p.degree_v() {
            let v = p.get(i, 1) + p.get(1, j) - q11;
            p.set(i, j, v);
        }
    }
}

pub(crate) fn apply_rule(
    p: &mut BezierPatch,
    rule: InteriorRule,
    default: impl FnOnce(&mut BezierPatch) -> Result<(), ConstructError>,
) -> Result<(), ConstructError> {
    match rule {
        InteriorRule::Default => default(p),
        InteriorRule::Custom(f) => {
            f(p);
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier_core::Point3;

    fn affine(n: usize) -> BezierPatch {
        BezierPatch::from_fn(n, n, |i, j| {
            let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
            Point3::new(u, v, 0.3 * u - 0.2 * v + 0.1)
        })
        .unwrap()
    }

    #[test]
    fn affine_nets_are_reproduced() {
        for n in [5, 6] {
            let want = affine(n);
            let mut p = want.clone();
            for i in 2..n - 1 {
                for j in 2..n - 1 {
                    p.set(i, j, Point3::new(9.0, 9.0, 9.0));
                }
            }
            default_interior(&mut p).unwrap();
            for (a, b) in p.net().iter().zip(want.net()) {
                assert!((a - b).norm() < 1e-14, "degree {n}");
            }
        }
    }

    #[test]
    fn unsupported_degree() {
        let mut p = affine(4);
        assert!(default_interior(&mut p).is_err());
    }
}
