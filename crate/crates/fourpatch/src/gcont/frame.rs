//! Derivative frames along a shared edge, oriented so that every edge looks
//! like the canonical join `r2_u(0,v) = λ r1_u(1,v) + κ r1_v(1,v)`.

use crate::bezier_core::{Side, Surface, Vec3};

use super::EdgeCorrespondence;

/// First and second derivatives of both patches at one edge parameter `t`
/// (always patch a's parameter).
#[derive(Debug, Clone, Copy)]
pub struct EdgeFrame {
    /// Derivative of a leaving the edge towards b.
    pub cross_a: Vec3,
    /// Derivative of a along the edge.
    pub tangent_a: Vec3,
    pub a_cc: Vec3,
    pub a_ct: Vec3,
    pub a_tt: Vec3,
    /// Derivative of b entering its interior from the edge.
    pub cross_b: Vec3,
    /// Derivative of b along the edge, in the direction of increasing t.
    pub tangent_b: Vec3,
    pub b_cc: Vec3,
    pub b_ct: Vec3,
    pub b_tt: Vec3,
    pub point_a: Vec3,
    pub point_b: Vec3,
}

fn outward_sign(side: Side) -> f64 {
    match side {
        Side::U1 | Side::V1 => 1.0,
        Side::U0 | Side::V0 => -1.0,
    }
}

/// (cross, along) derivative orders for a side.
fn orders(side: Side) -> ((usize, usize), (usize, usize)) {
    if side.is_u_side() {
        ((1, 0), (0, 1))
    } else {
        ((0, 1), (1, 0))
    }
}

fn second(s: &impl Surface, u: f64, v: f64, side: Side) -> (Vec3, Vec3, Vec3) {
    let cc = if side.is_u_side() { (2, 0) } else { (0, 2) };
    let tt = if side.is_u_side() { (0, 2) } else { (2, 0) };
    (
        s.partial(u, v, cc.0, cc.1),
        s.partial(u, v, 1, 1),
        s.partial(u, v, tt.0, tt.1),
    )
}

pub fn edge_frame(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    t: f64,
) -> EdgeFrame {
    let (ua, va) = corr.a_side.param(t);
    let tb = if corr.reversed { 1.0 - t } else { t };
    let (ub, vb) = corr.b_side.param(tb);

    let sa = outward_sign(corr.a_side);
    let ((cau, cav), (tau, tav)) = orders(corr.a_side);
    let (a_cc, a_mixed, a_tt) = second(a, ua, va, corr.a_side);

    let sb = -outward_sign(corr.b_side);
    let st = if corr.reversed { -1.0 } else { 1.0 };
    let ((cbu, cbv), (tbu, tbv)) = orders(corr.b_side);
    let (b_cc, b_mixed, b_tt) = second(b, ub, vb, corr.b_side);

    EdgeFrame {
        cross_a: a.partial(ua, va, cau, cav) * sa,
        tangent_a: a.partial(ua, va, tau, tav),
        a_cc,
        a_ct: a_mixed * sa,
        a_tt,
        cross_b: b.partial(ub, vb, cbu, cbv) * sb,
        tangent_b: b.partial(ub, vb, tbu, tbv) * st,
        b_cc,
        b_ct: b_mixed * (sb * st),
        b_tt,
        point_a: a.point(ua, va),
        point_b: b.point(ub, vb),
    }
}

/// Least-squares coordinates of `target` in span{e1, e2} and the norm of the
/// part of `target` outside that span. `None` if the basis is rank deficient
/// relative to `rank_tol * scale^2`.
pub fn project2(
    target: &Vec3,
    e1: &Vec3,
    e2: &Vec3,
    scale: f64,
    rank_tol: f64,
) -> Option<(f64, f64, f64)> {
    let cross = e1.cross(e2);
    if cross.norm() < rank_tol * scale * scale {
        return None;
    }
    let g11 = e1.dot(e1);
    let g12 = e1.dot(e2);
    let g22 = e2.dot(e2);
    let r1 = e1.dot(target);
    let r2 = e2.dot(target);
    let det = g11 * g22 - g12 * g12;
    let x = (g22 * r1 - g12 * r2) / det;
    let y = (g11 * r2 - g12 * r1) / det;
    let n = cross / cross.norm();
    let off = target.dot(&n).abs();
    Some((x, y, off))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_recovers_coordinates() {
        let e1 = Vec3::new(1.0, 0.2, 0.0);
        let e2 = Vec3::new(-0.3, 1.0, 0.1);
        let t = e1 * 2.5 - e2 * 0.75 + e1.cross(&e2).normalize() * 1e-3;
        let (x, y, off) = project2(&t, &e1, &e2, 1.0, 1e-10).unwrap();
        assert!((x - 2.5).abs() < 1e-12 && (y + 0.75).abs() < 1e-12);
        assert!((off - 1e-3).abs() < 1e-12);
        assert!(project2(&t, &e1, &(e1 * 2.0), 1.0, 1e-10).is_none());
    }
}
