use crate::bezier_core::{binomial, elevate_points, BernsteinPoly, ControlRow, Point3, Vec3};

use super::{ConstructError, LinkCoefficients};

/// Cross-boundary offsets `m (q̄_{i,1} - q̄_{i,0})`, i = 0..5, of a patch
/// joined G1 to a bi-cubic neighbor whose boundary row is `boundary` and
/// whose next row inward is `inner`. λ is quadratic, κ cubic.
///
/// The returned vectors do not depend on `m`; callers divide by the
/// transverse degree and add to the raised boundary row.
pub fn g1_row_from_link(
    boundary: &ControlRow,
    inner: &ControlRow,
    c: &LinkCoefficients,
    m: usize,
) -> Result<ControlRow, ConstructError> {
    if !(4..=6).contains(&m) {
        return Err(ConstructError::Precondition(format!(
            "transverse degree {m} not in 4..=6"
        )));
    }
    if boundary.len() != 4 || inner.len() != 4 {
        return Err(ConstructError::Precondition(
            "rows must hold 4 points".into(),
        ));
    }
    let q = &boundary.points;
    let d: Vec<Vec3> = q.iter().zip(&inner.points).map(|(a, b)| a - b).collect();
    let t: Vec<Vec3> = q.windows(2).map(|w| w[1] - w[0]).collect();
    let LinkCoefficients {
        lambda0: l0,
        alpha: a,
        lambda1: l1,
        kappa0: k0,
        beta1: b1,
        beta2: b2,
        kappa1: k1,
    } = *c;
    let rows = vec![
        (d[0] * l0 + t[0] * k0) * 3.0,
        (d[1] * (3.0 * l0 / 5.0)
            + d[0] * (2.0 * a / 5.0)
            + t[1] * (2.0 * k0 / 5.0)
            + t[0] * (3.0 * b1 / 5.0))
            * 3.0,
        (d[2] * (3.0 * l0 / 10.0)
            + d[1] * (6.0 * a / 10.0)
            + d[0] * (l1 / 10.0)
            + t[2] * (k0 / 10.0)
            + t[1] * (6.0 * b1 / 10.0)
            + t[0] * (3.0 * b2 / 10.0))
            * 3.0,
        (d[3] * (l0 / 10.0)
            + d[2] * (6.0 * a / 10.0)
            + d[1] * (3.0 * l1 / 10.0)
            + t[2] * (3.0 * b1 / 10.0)
            + t[1] * (6.0 * b2 / 10.0)
            + t[0] * (k1 / 10.0))
            * 3.0,
        (d[3] * (2.0 * a / 5.0)
            + d[2] * (3.0 * l1 / 5.0)
            + t[2] * (3.0 * b2 / 5.0)
            + t[1] * (2.0 * k1 / 5.0))
            * 3.0,
        (d[3] * l1 + t[2] * k1) * 3.0,
    ];
    Ok(ControlRow::new(rows))
}

/// Bernstein coefficients of `s(t) * p(t)` for scalar `s` and vector `p`.
fn scale_vector_poly(s: &BernsteinPoly, p: &[Vec3]) -> Vec<Vec3> {
    let m = s.degree();
    let n = p.len() - 1;
    let mut out = vec![Vec3::zeros(); m + n + 1];
    for (i, si) in s.coeffs.iter().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            out[i + j] += pj * (binomial(m, i) * binomial(n, j) / binomial(m + n, i + j) * si);
        }
    }
    out
}

/// General form of the row relations: Bernstein coefficients, at degree
/// `target`, of `λ(t) D(t) + κ(t) T(t)` where `D` is the outward cross
/// derivative of the neighbor (from `boundary` and `inner`, any degree) and
/// `T` its boundary tangent.
pub fn link_band(
    boundary: &[Point3],
    inner: &[Point3],
    lambda: &BernsteinPoly,
    kappa: &BernsteinPoly,
    neighbor_cross_degree: usize,
    target: usize,
) -> Result<Vec<Vec3>, ConstructError> {
    if boundary.len() != inner.len() || boundary.len() < 2 {
        return Err(ConstructError::Precondition(
            "band rows must match and hold at least 2 points".into(),
        ));
    }
    let n = boundary.len() - 1;
    let nc = neighbor_cross_degree as f64;
    let d: Vec<Vec3> = boundary
        .iter()
        .zip(inner)
        .map(|(a, b)| (a - b) * nc)
        .collect();
    let t: Vec<Vec3> = boundary
        .windows(2)
        .map(|w| (w[1] - w[0]) * n as f64)
        .collect();
    let a = scale_vector_poly(lambda, &d);
    let b = scale_vector_poly(kappa, &t);
    let deg = (a.len() - 1).max(b.len() - 1);
    if deg > target {
        return Err(ConstructError::Precondition(format!(
            "band has degree {deg}, cannot express at degree {target}"
        )));
    }
    let a = elevate_points(&a, target);
    let b = elevate_points(&b, target);
    Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier_core::elevate_cubic_row_to_quintic;

    fn row(pts: &[[f64; 3]]) -> ControlRow {
        ControlRow::new(pts.iter().map(|p| Point3::new(p[0], p[1], p[2])).collect())
    }

    fn sample_rows() -> (ControlRow, ControlRow) {
        let b = row(&[
            [0.0, 1.0, 0.1],
            [0.4, 1.05, 0.0],
            [0.7, 0.95, -0.2],
            [1.0, 1.0, 0.05],
        ]);
        let i = row(&[
            [0.02, 0.7, 0.0],
            [0.35, 0.72, 0.1],
            [0.71, 0.66, -0.1],
            [1.03, 0.69, 0.0],
        ]);
        (b, i)
    }

    #[test]
    fn unit_link_first_relation() {
        let (b, i) = sample_rows();
        let c = LinkCoefficients::constant(1.0);
        let out = g1_row_from_link(&b, &i, &c, 5).unwrap();
        let want = (b.points[0] - i.points[0]) * 3.0;
        assert!((out.points[0] - want).norm() < 1e-15);
    }

    #[test]
    fn zero_cross_derivative_gives_zero_offsets() {
        let (b, _) = sample_rows();
        let c = LinkCoefficients {
            lambda0: 1.3,
            alpha: 0.2,
            lambda1: 2.0,
            ..LinkCoefficients::constant(0.0)
        };
        let out = g1_row_from_link(&b, &b, &c, 5).unwrap();
        assert!(out.points.iter().all(|p| p.norm() == 0.0));
    }

    #[test]
    fn explicit_rows_match_general_product() {
        let (b, i) = sample_rows();
        let c = LinkCoefficients {
            lambda0: 1.3,
            alpha: 0.7,
            lambda1: 0.9,
            kappa0: 0.2,
            beta1: -0.4,
            beta2: 0.35,
            kappa1: -0.1,
        };
        let explicit = g1_row_from_link(&b, &i, &c, 5).unwrap();
        let general = link_band(
            &b.points,
            &i.points,
            &c.lambda_poly(),
            &c.kappa_poly(),
            3,
            5,
        )
        .unwrap();
        for (x, y) in explicit.points.iter().zip(&general) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn bad_degree_rejected() {
        let (b, i) = sample_rows();
        assert!(g1_row_from_link(&b, &i, &LinkCoefficients::constant(1.0), 7).is_err());
        // m = 4 is accepted
        assert!(g1_row_from_link(&b, &i, &LinkCoefficients::constant(1.0), 4).is_ok());
    }

    #[test]
    fn assembled_row_satisfies_link_equation() {
        let (b, i) = sample_rows();
        let c = LinkCoefficients {
            lambda0: 0.8,
            alpha: 1.4,
            lambda1: 1.1,
            kappa0: -0.3,
            beta1: 0.25,
            beta2: -0.5,
            kappa1: 0.15,
        };
        let off = g1_row_from_link(&b, &i, &c, 5).unwrap();
        let row0 = elevate_cubic_row_to_quintic(&b).unwrap();
        let row1: Vec<Point3> = row0
            .points
            .iter()
            .zip(&off.points)
            .map(|(p, o)| p + o / 5.0)
            .collect();
        let cross_new = ControlRow::new(
            row0.points
                .iter()
                .zip(&row1)
                .map(|(a, b)| (b - a) * 5.0)
                .collect(),
        );
        let cross_old = ControlRow::new(
            b.points
                .iter()
                .zip(&i.points)
                .map(|(a, b)| (a - b) * 3.0)
                .collect(),
        );
        let tangent = b.hodograph();
        let (lp, kp) = (c.lambda_poly(), c.kappa_poly());
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let lhs = cross_new.eval(t);
            let rhs = cross_old.eval(t) * lp.eval(t) + tangent.eval(t) * kp.eval(t);
            assert!((lhs - rhs).norm() < 1e-11);
        }
    }
}
