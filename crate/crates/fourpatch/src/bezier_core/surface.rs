use super::bernstein::binomial;
use super::{BezierPatch, Point3, Vec3};

/// Anything that can be evaluated and differentiated up to second order on
/// the unit square.
pub trait Surface {
    fn point(&self, u: f64, v: f64) -> Point3;
    /// Partial derivative of order (du, dv) with du + dv <= 2.
    fn partial(&self, u: f64, v: f64, du: usize, dv: usize) -> Vec3;
    /// Characteristic size, used to normalize residuals.
    fn scale(&self) -> f64;

    fn unit_normal(&self, u: f64, v: f64) -> Option<Vec3> {
        let n = self.partial(u, v, 1, 0).cross(&self.partial(u, v, 0, 1));
        let len = n.norm();
        (len > 0.0).then(|| n / len)
    }
}

impl<S: Surface + ?Sized> Surface for &S {
    fn point(&self, u: f64, v: f64) -> Point3 {
        (**self).point(u, v)
    }
    fn partial(&self, u: f64, v: f64, du: usize, dv: usize) -> Vec3 {
        (**self).partial(u, v, du, dv)
    }
    fn scale(&self) -> f64 {
        (**self).scale()
    }
}

/// Value and derivatives (to order 2) of a planar map (u,v) -> (s,t).
#[derive(Debug, Clone, Copy, Default)]
pub struct MapJet {
    pub s: f64,
    pub t: f64,
    pub s_u: f64,
    pub s_v: f64,
    pub t_u: f64,
    pub t_v: f64,
    pub s_uu: f64,
    pub s_uv: f64,
    pub s_vv: f64,
    pub t_uu: f64,
    pub t_uv: f64,
    pub t_vv: f64,
}

/// A reparametrization of the unit square.
pub trait DomainMap {
    fn jet(&self, u: f64, v: f64) -> MapJet;
}

impl<F: Fn(f64, f64) -> MapJet> DomainMap for F {
    fn jet(&self, u: f64, v: f64) -> MapJet {
        self(u, v)
    }
}

/// `base ∘ map`, differentiated by the chain rule.
pub struct Reparametrized<S, M> {
    pub base: S,
    pub map: M,
}

impl<S: Surface, M: DomainMap> Surface for Reparametrized<S, M> {
    fn point(&self, u: f64, v: f64) -> Point3 {
        let j = self.map.jet(u, v);
        self.base.point(j.s, j.t)
    }

    fn partial(&self, u: f64, v: f64, du: usize, dv: usize) -> Vec3 {
        let j = self.map.jet(u, v);
        let b = |a: usize, c: usize| self.base.partial(j.s, j.t, a, c);
        match (du, dv) {
            (0, 0) => self.base.point(j.s, j.t),
            (1, 0) => b(1, 0) * j.s_u + b(0, 1) * j.t_u,
            (0, 1) => b(1, 0) * j.s_v + b(0, 1) * j.t_v,
            (2, 0) => {
                b(2, 0) * (j.s_u * j.s_u)
                    + b(1, 1) * (2.0 * j.s_u * j.t_u)
                    + b(0, 2) * (j.t_u * j.t_u)
                    + b(1, 0) * j.s_uu
                    + b(0, 1) * j.t_uu
            }
            (0, 2) => {
                b(2, 0) * (j.s_v * j.s_v)
                    + b(1, 1) * (2.0 * j.s_v * j.t_v)
                    + b(0, 2) * (j.t_v * j.t_v)
                    + b(1, 0) * j.s_vv
                    + b(0, 1) * j.t_vv
            }
            (1, 1) => {
                b(2, 0) * (j.s_u * j.s_v)
                    + b(1, 1) * (j.s_u * j.t_v + j.s_v * j.t_u)
                    + b(0, 2) * (j.t_u * j.t_v)
                    + b(1, 0) * j.s_uv
                    + b(0, 1) * j.t_uv
            }
            _ => panic!("derivative order ({du},{dv}) not supported"),
        }
    }

    fn scale(&self) -> f64 {
        self.base.scale()
    }
}

/// Scalar tensor-product Bernstein polynomial, used for exact composition.
#[derive(Debug, Clone)]
struct Scalar2 {
    nu: usize,
    nv: usize,
    c: Vec<f64>,
}

impl Scalar2 {
    fn one() -> Self {
        Self {
            nu: 0,
            nv: 0,
            c: vec![1.0],
        }
    }

    /// Bilinear form from corner values f(0,0), f(0,1), f(1,0), f(1,1).
    fn bilinear(f00: f64, f01: f64, f10: f64, f11: f64) -> Self {
        Self {
            nu: 1,
            nv: 1,
            c: vec![f00, f01, f10, f11],
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let (nu, nv) = (self.nu + o.nu, self.nv + o.nv);
        let mut c = vec![0.0; (nu + 1) * (nv + 1)];
        for i in 0..=self.nu {
            for j in 0..=self.nv {
                let a = self.c[i * (self.nv + 1) + j];
                for k in 0..=o.nu {
                    for l in 0..=o.nv {
                        let w = binomial(self.nu, i) * binomial(o.nu, k) / binomial(nu, i + k)
                            * binomial(self.nv, j)
                            * binomial(o.nv, l)
                            / binomial(nv, j + l);
                        c[(i + k) * (nv + 1) + j + l] += w * a * o.c[k * (o.nv + 1) + l];
                    }
                }
            }
        }
        Self { nu, nv, c }
    }

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn elevate_to(&self, nu: usize, nv: usize) -> Vec<f64> {
        let mut out = vec![0.0; (nu + 1) * (nv + 1)];
        let (ru, rv) = (nu - self.nu, nv - self.nv);
        for i in 0..=self.nu {
            for j in 0..=self.nv {
                let a = self.c[i * (self.nv + 1) + j];
                for k in 0..=ru {
                    for l in 0..=rv {
                        let w = binomial(self.nu, i) * binomial(ru, k) / binomial(nu, i + k)
                            * binomial(self.nv, j)
                            * binomial(rv, l)
                            / binomial(nv, j + l);
                        out[(i + k) * (nv + 1) + j + l] += w * a;
                    }
                }
            }
        }
        out
    }
}

/// Exact Bezier form of `h(A(u,v))` where A is the bilinear map of the unit
/// square onto the quadrilateral with domain corners `c00, c01, c10, c11`
/// (given as (s,t) pairs in h's parameter plane). The result has bi-degree
/// `(p+q, p+q)` for an input of bi-degree `(p, q)`.
pub fn compose_bilinear(
    h: &BezierPatch,
    c00: (f64, f64),
    c01: (f64, f64),
    c10: (f64, f64),
    c11: (f64, f64),
) -> BezierPatch {
    let (p, q) = (h.degree_u(), h.degree_v());
    let s = Scalar2::bilinear(c00.0, c01.0, c10.0, c11.0);
    let t = Scalar2::bilinear(c00.1, c01.1, c10.1, c11.1);
    let one_minus = |f: &Scalar2| Scalar2 {
        nu: f.nu,
        nv: f.nv,
        c: f.c.iter().map(|x| 1.0 - x).collect(),
    };
    let (s1, t1) = (one_minus(&s), one_minus(&t));
    let n = p + q;
    let mut net = vec![Vec3::zeros(); (n + 1) * (n + 1)];
    for i in 0..=p {
        let bs = s.pow(i).mul(&s1.pow(p - i));
        for j in 0..=q {
            let w = bs.mul(&t.pow(j).mul(&t1.pow(q - j)));
            let coef = binomial(p, i) * binomial(q, j);
            let ctrl = h.get(i, j);
            for (slot, wk) in net.iter_mut().zip(w.elevate_to(n, n)) {
                *slot += ctrl * (coef * wk);
            }
        }
    }
    BezierPatch::new(n, n, net).expect("composition yields a valid net")
}
