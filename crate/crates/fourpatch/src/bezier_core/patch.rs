use super::bernstein::{bernstein_all, bernstein_unchecked};
use super::curve::{de_casteljau, elevate_points, reparam_interval, ControlRow, RowSource};
use super::{CoreError, Point3, Side, Surface, Vec3};

/// Tensor-product Bezier patch. `net[i * (degree_v + 1) + j]` is `q_{i,j}`,
/// `i` running along u.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierPatch {
    degree_u: usize,
    degree_v: usize,
    net: Vec<Point3>,
}

impl BezierPatch {
    pub fn new(degree_u: usize, degree_v: usize, net: Vec<Point3>) -> Result<Self, CoreError> {
        if degree_u == 0 || degree_v == 0 {
            return Err(CoreError::BadDegree);
        }
        let expected = (degree_u + 1) * (degree_v + 1);
        if net.len() != expected {
            return Err(CoreError::WrongLength {
                expected,
                got: net.len(),
            });
        }
        if net.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(CoreError::NonFinite);
        }
        Ok(Self {
            degree_u,
            degree_v,
            net,
        })
    }

    /// Build from a closure `f(i, j) -> q_{i,j}`.
    pub fn from_fn(
        degree_u: usize,
        degree_v: usize,
        mut f: impl FnMut(usize, usize) -> Point3,
    ) -> Result<Self, CoreError> {
        let mut net = Vec::with_capacity((degree_u + 1) * (degree_v + 1));
        for i in 0..=degree_u {
            for j in 0..=degree_v {
                net.push(f(i, j));
            }
        }
        Self::new(degree_u, degree_v, net)
    }

    pub fn degree_u(&self) -> usize {
        self.degree_u
    }

    pub fn degree_v(&self) -> usize {
        self.degree_v
    }

    pub fn net(&self) -> &[Point3] {
        &self.net
    }

    pub fn get(&self, i: usize, j: usize) -> Point3 {
        self.net[i * (self.degree_v + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Point3) {
        let dv = self.degree_v;
        self.net[i * (dv + 1) + j] = p;
    }

    fn u_column(&self, j: usize) -> Vec<Point3> {
        (0..=self.degree_u).map(|i| self.get(i, j)).collect()
    }

    fn v_row(&self, i: usize) -> Vec<Point3> {
        (0..=self.degree_v).map(|j| self.get(i, j)).collect()
    }

    /// Evaluation by repeated de Casteljau: v first, then u.
    pub fn eval(&self, u: f64, v: f64) -> Point3 {
        let col: Vec<Point3> = (0..=self.degree_u)
            .map(|i| de_casteljau(&self.v_row(i), v))
            .collect();
        de_casteljau(&col, u)
    }

    /// Evaluation by the explicit basis sum.
    pub fn eval_basis_sum(&self, u: f64, v: f64) -> Point3 {
        let bu = bernstein_all(self.degree_u, u);
        let bv = bernstein_all(self.degree_v, v);
        let mut acc = Vec3::zeros();
        for (i, wu) in bu.iter().enumerate() {
            for (j, wv) in bv.iter().enumerate() {
                acc += self.get(i, j) * (wu * wv);
            }
        }
        acc
    }

    /// Checked evaluation: parameters must lie in [0,1].
    pub fn patch_eval(&self, u: f64, v: f64) -> Result<Point3, CoreError> {
        check_domain(u, v)?;
        Ok(self.eval(u, v))
    }

    /// Exact partial derivative of order (du, dv), du + dv <= 2.
    pub fn patch_derivative(
        &self,
        u: f64,
        v: f64,
        du: usize,
        dv: usize,
    ) -> Result<Vec3, CoreError> {
        if du + dv > 2 {
            return Err(CoreError::UnsupportedOrder { du, dv });
        }
        check_domain(u, v)?;
        Ok(self.derivative_any(u, v, du, dv))
    }

    /// Partial derivative of any order via difference nets; no domain check.
    pub fn derivative_any(&self, u: f64, v: f64, du: usize, dv: usize) -> Vec3 {
        if du > self.degree_u || dv > self.degree_v {
            return Vec3::zeros();
        }
        let d = self.difference_net(du, dv);
        let nu = self.degree_u - du;
        let nv = self.degree_v - dv;
        let bu = bernstein_all(nu, u);
        let bv = bernstein_all(nv, v);
        let mut acc = Vec3::zeros();
        for i in 0..=nu {
            for j in 0..=nv {
                acc += d[i * (nv + 1) + j] * (bu[i] * bv[j]);
            }
        }
        acc
    }

    /// Scaled forward-difference net of order (du, dv).
    fn difference_net(&self, du: usize, dv: usize) -> Vec<Point3> {
        let mut nu = self.degree_u;
        let mut nv = self.degree_v;
        let mut net = self.net.clone();
        for _ in 0..du {
            let mut next = Vec::with_capacity(nu * (nv + 1));
            for i in 0..nu {
                for j in 0..=nv {
                    next.push((net[(i + 1) * (nv + 1) + j] - net[i * (nv + 1) + j]) * nu as f64);
                }
            }
            net = next;
            nu -= 1;
        }
        for _ in 0..dv {
            let mut next = Vec::with_capacity((nu + 1) * nv);
            for i in 0..=nu {
                for j in 0..nv {
                    next.push((net[i * (nv + 1) + j + 1] - net[i * (nv + 1) + j]) * nv as f64);
                }
            }
            net = next;
            nv -= 1;
        }
        net
    }

    /// Exact raise to bi-degree (target_u, target_v).
    pub fn elevate(&self, target_u: usize, target_v: usize) -> BezierPatch {
        assert!(target_u >= self.degree_u && target_v >= self.degree_v);
        let rows: Vec<Vec<Point3>> = (0..=self.degree_u)
            .map(|i| elevate_points(&self.v_row(i), target_v))
            .collect();
        let mut out = vec![Vec3::zeros(); (target_u + 1) * (target_v + 1)];
        for j in 0..=target_v {
            let col: Vec<Point3> = rows.iter().map(|r| r[j]).collect();
            for (i, p) in elevate_points(&col, target_u).into_iter().enumerate() {
                out[i * (target_v + 1) + j] = p;
            }
        }
        BezierPatch {
            degree_u: target_u,
            degree_v: target_v,
            net: out,
        }
    }

    /// The same polynomial re-expressed over [u0,u1] x [v0,v1] (extrapolation allowed).
    pub fn restrict(&self, u0: f64, u1: f64, v0: f64, v1: f64) -> BezierPatch {
        let rows: Vec<Vec<Point3>> = (0..=self.degree_u)
            .map(|i| reparam_interval(&self.v_row(i), v0, v1))
            .collect();
        let mut out = vec![Vec3::zeros(); self.net.len()];
        for j in 0..=self.degree_v {
            let col: Vec<Point3> = rows.iter().map(|r| r[j]).collect();
            for (i, p) in reparam_interval(&col, u0, u1).into_iter().enumerate() {
                out[i * (self.degree_v + 1) + j] = p;
            }
        }
        BezierPatch {
            degree_u: self.degree_u,
            degree_v: self.degree_v,
            net: out,
        }
    }

    /// Classical de Casteljau split in u at `t`.
    pub fn split_u(&self, t: f64) -> (BezierPatch, BezierPatch) {
        let n = self.degree_u;
        let mut left = self.clone();
        let mut right = self.clone();
        for j in 0..=self.degree_v {
            let mut w = self.u_column(j);
            left.set(0, j, w[0]);
            right.set(n, j, w[n]);
            for r in 1..=n {
                for i in 0..=n - r {
                    w[i] = w[i] * (1.0 - t) + w[i + 1] * t;
                }
                left.set(r, j, w[0]);
                right.set(n - r, j, w[n - r]);
            }
        }
        (left, right)
    }

    pub fn transpose(&self) -> BezierPatch {
        BezierPatch::from_fn(self.degree_v, self.degree_u, |i, j| self.get(j, i))
            .expect("transpose keeps a valid net")
    }

    /// Reverse the u direction.
    pub fn flip_u(&self) -> BezierPatch {
        let n = self.degree_u;
        BezierPatch::from_fn(n, self.degree_v, |i, j| self.get(n - i, j)).expect("valid net")
    }

    /// Reverse the v direction.
    pub fn flip_v(&self) -> BezierPatch {
        let n = self.degree_v;
        BezierPatch::from_fn(self.degree_u, n, |i, j| self.get(i, n - j)).expect("valid net")
    }

    /// Apply a point map to every control point (exact for affine maps).
    pub fn map_points(&self, f: impl Fn(&Point3) -> Point3) -> BezierPatch {
        BezierPatch {
            degree_u: self.degree_u,
            degree_v: self.degree_v,
            net: self.net.iter().map(f).collect(),
        }
    }

    pub fn bbox_diagonal(&self) -> f64 {
        bbox_diagonal(self.net.iter())
    }

    /// Control row on side `side` (offset 0) or one row inward (offset 1),
    /// ordered by increasing free parameter.
    pub fn boundary_row(&self, side: Side, offset: usize) -> Result<ControlRow, CoreError> {
        let limit = match side {
            Side::U0 | Side::U1 => self.degree_u,
            Side::V0 | Side::V1 => self.degree_v,
        };
        if offset > limit {
            return Err(CoreError::IndexOutOfRange {
                index: offset,
                degree: limit,
            });
        }
        let points = match side {
            Side::U0 => self.v_row(offset),
            Side::U1 => self.v_row(self.degree_u - offset),
            Side::V0 => self.u_column(offset),
            Side::V1 => self.u_column(self.degree_v - offset),
        };
        Ok(ControlRow {
            points,
            source: Some(RowSource {
                patch: 0,
                side,
                offset,
            }),
        })
    }

    /// Corner control point at parameter corner (cu, cv), each 0 or 1.
    pub fn corner(&self, cu: usize, cv: usize) -> Point3 {
        self.get(cu * self.degree_u, cv * self.degree_v)
    }
}

impl Surface for BezierPatch {
    fn point(&self, u: f64, v: f64) -> Point3 {
        self.eval(u, v)
    }

    fn partial(&self, u: f64, v: f64, du: usize, dv: usize) -> Vec3 {
        self.derivative_any(u, v, du, dv)
    }

    fn scale(&self) -> f64 {
        self.bbox_diagonal()
    }
}

pub(crate) fn bbox_diagonal<'a>(points: impl Iterator<Item = &'a Point3>) -> f64 {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

fn check_domain(u: f64, v: f64) -> Result<(), CoreError> {
    if (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(CoreError::Domain { u, v })
    }
}

/// Basis weight helper used by tests and tessellation.
pub fn basis_weight(n: usize, i: usize, t: f64) -> f64 {
    bernstein_unchecked(n, i, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bilinear() -> BezierPatch {
        BezierPatch::new(
            1,
            1,
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(1.0, 1.0, 0.0),
            ],
        )
        .unwrap()
    }

    fn wavy(du: usize, dv: usize) -> BezierPatch {
        BezierPatch::from_fn(du, dv, |i, j| {
            let (x, y) = (i as f64 / du as f64, j as f64 / dv as f64);
            Point3::new(
                x + 0.1 * y,
                y - 0.05 * x * x,
                (3.0 * x).sin() * (2.0 * y).cos(),
            )
        })
        .unwrap()
    }

    #[test]
    fn bilinear_examples() {
        let p = bilinear();
        assert_eq!(p.patch_eval(0.0, 0.0).unwrap(), Point3::zeros());
        assert!((p.patch_eval(0.5, 0.5).unwrap() - Point3::new(0.5, 0.5, 0.0)).norm() < 1e-15);
        let d = p.patch_derivative(0.3, 0.8, 1, 0).unwrap();
        assert!((d - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!(p.patch_eval(1.2, 0.0).is_err());
        assert!(matches!(
            p.patch_derivative(0.1, 0.1, 2, 1),
            Err(CoreError::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn constant_in_v_has_zero_rv() {
        let p =
            BezierPatch::from_fn(3, 3, |i, _| Point3::new(i as f64, (i * i) as f64, 1.0)).unwrap();
        for k in 0..5 {
            let t = k as f64 / 4.0;
            assert_eq!(p.patch_derivative(t, 1.0 - t, 0, 1).unwrap(), Vec3::zeros());
        }
    }

    #[test]
    fn net_size_checked() {
        assert!(matches!(
            BezierPatch::new(2, 1, vec![Point3::zeros(); 5]),
            Err(CoreError::WrongLength {
                expected: 6,
                got: 5
            })
        ));
        assert!(BezierPatch::new(0, 1, vec![Point3::zeros(); 2]).is_err());
    }

    #[test]
    fn split_matches_restrict() {
        let p = wavy(4, 3);
        let (l, r) = p.split_u(0.5);
        let lr = p.restrict(0.0, 0.5, 0.0, 1.0);
        let rr = p.restrict(0.5, 1.0, 0.0, 1.0);
        for (a, b) in l.net().iter().zip(lr.net()) {
            assert!((a - b).norm() < 1e-13);
        }
        for (a, b) in r.net().iter().zip(rr.net()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn elevate_preserves_surface() {
        let p = wavy(3, 2);
        let e = p.elevate(5, 6);
        for k in 0..=6 {
            let (u, v) = (k as f64 / 6.0, (k as f64 * 0.37) % 1.0);
            assert!((e.eval(u, v) - p.eval(u, v)).norm() < 1e-13);
        }
    }

    #[test]
    fn boundary_rows() {
        let p = wavy(3, 3);
        let r = p.boundary_row(Side::V1, 0).unwrap();
        for i in 0..4 {
            assert_eq!(r.points[i], p.get(i, 3));
        }
        let r = p.boundary_row(Side::U0, 1).unwrap();
        for j in 0..4 {
            assert_eq!(r.points[j], p.get(1, j));
        }
        for side in [Side::U0, Side::U1, Side::V0, Side::V1] {
            let row = p.boundary_row(side, 0).unwrap();
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                let (u, v) = side.param(t);
                assert!((row.eval(t) - p.eval(u, v)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn flips_and_transpose() {
        let p = wavy(3, 2);
        let (u, v) = (0.3, 0.8);
        assert!((p.flip_u().eval(1.0 - u, v) - p.eval(u, v)).norm() < 1e-14);
        assert!((p.flip_v().eval(u, 1.0 - v) - p.eval(u, v)).norm() < 1e-14);
        assert!((p.transpose().eval(v, u) - p.eval(u, v)).norm() < 1e-14);
    }
}
