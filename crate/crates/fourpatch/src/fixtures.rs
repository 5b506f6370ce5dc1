//! Oracle generators: subdivided global surfaces, reparametrized quadrant
//! families, crease pairs. Randomness comes from a caller-supplied uniform
//! source so the library stays free of RNG dependencies.

use crate::bezier_core::{
    compose_bilinear, BernsteinPoly, BezierPatch, DomainMap, MapJet, Point3, Reparametrized, Side,
};
use crate::construct::{link_band, NinePatchRing, RingLambdas, RING_POSITIONS};
use crate::io_cli::SurfaceDocument;

/// Uniform samples in [0,1).
pub type Uniform<'a> = &'a mut dyn FnMut() -> f64;

fn sym(rng: Uniform, amp: f64) -> f64 {
    (2.0 * rng() - 1.0) * amp
}

/// Split `global` into an `nu x nv` grid; result indexed `[iu][iv]`.
pub fn split_grid(global: &BezierPatch, nu: usize, nv: usize) -> Vec<Vec<BezierPatch>> {
    (0..nu)
        .map(|a| {
            (0..nv)
                .map(|b| {
                    global.restrict(
                        a as f64 / nu as f64,
                        (a + 1) as f64 / nu as f64,
                        b as f64 / nv as f64,
                        (b + 1) as f64 / nv as f64,
                    )
                })
                .collect()
        })
        .collect()
}

/// A gently curved height field over the unit square, bi-degree (du, dv).
pub fn random_height_patch(
    du: usize,
    dv: usize,
    amp: f64,
    jitter: f64,
    rng: Uniform,
) -> BezierPatch {
    BezierPatch::from_fn(du, dv, |i, j| {
        Point3::new(
            i as f64 / du as f64 + sym(rng, jitter),
            j as f64 / dv as f64 + sym(rng, jitter),
            sym(rng, amp),
        )
    })
    .expect("finite net")
}

/// Monotone endpoint-fixing map x + a x(1-x) + b x²(1-x).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EdgeWarp {
    pub a: f64,
    pub b: f64,
}

impl EdgeWarp {
    fn jet(&self, x: f64) -> (f64, f64, f64) {
        let v = x + self.a * x * (1.0 - x) + self.b * x * x * (1.0 - x);
        let d = 1.0 + self.a * (1.0 - 2.0 * x) + self.b * (2.0 * x - 3.0 * x * x);
        let dd = -2.0 * self.a + self.b * (2.0 - 6.0 * x);
        (v, d, dd)
    }
}

/// Boundary-fixing reparametrization of the unit square: separable edge
/// warps plus a bump `c · u(1-u)v(1-v)` that vanishes on the boundary.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SquareWarp {
    pub u_warp: EdgeWarp,
    pub v_warp: EdgeWarp,
    pub bump: (f64, f64),
}

impl DomainMap for SquareWarp {
    fn jet(&self, u: f64, v: f64) -> MapJet {
        let (su, dsu, ddsu) = self.u_warp.jet(u);
        let (tv, dtv, ddtv) = self.v_warp.jet(v);
        let pu = u * (1.0 - u);
        let pv = v * (1.0 - v);
        let w = pu * pv;
        let w_u = (1.0 - 2.0 * u) * pv;
        let w_v = pu * (1.0 - 2.0 * v);
        let w_uu = -2.0 * pv;
        let w_vv = -2.0 * pu;
        let w_uv = (1.0 - 2.0 * u) * (1.0 - 2.0 * v);
        let (cs, ct) = self.bump;
        MapJet {
            s: su + cs * w,
            t: tv + ct * w,
            s_u: dsu + cs * w_u,
            s_v: cs * w_v,
            t_u: ct * w_u,
            t_v: dtv + ct * w_v,
            s_uu: ddsu + cs * w_uu,
            s_uv: cs * w_uv,
            s_vv: cs * w_vv,
            t_uu: ct * w_uu,
            t_uv: ct * w_uv,
            t_vv: ddtv + ct * w_vv,
        }
    }
}

/// Four quadrants of one smooth surface `h` around the domain point
/// `center`, cut along sheared directions and reparametrized with
/// boundary-fixing warps that agree on shared edges.
#[derive(Debug, Clone)]
pub struct QuadrantFamily {
    pub h: BezierPatch,
    pub center: (f64, f64),
    /// Domain offsets towards the left, right, down and up neighbors.
    pub left: (f64, f64),
    pub right: (f64, f64),
    pub down: (f64, f64),
    pub up: (f64, f64),
    /// Column warps (patches 1,4 use `sigma_left`, 2,3 use `sigma_right`).
    pub sigma_left: EdgeWarp,
    pub sigma_right: EdgeWarp,
    /// Row warps (patches 1,2 use `tau_down`, 4,3 use `tau_up`).
    pub tau_down: EdgeWarp,
    pub tau_up: EdgeWarp,
    /// Interior bumps for patches 1,2,3,4.
    pub bumps: [(f64, f64); 4],
}

pub type WarpedPatch = Reparametrized<BezierPatch, SquareWarp>;

impl QuadrantFamily {
    /// Random instance with a curved bi-quartic and mild warps.
    pub fn random(rng: Uniform, warp: f64) -> Self {
        let h = random_height_patch(4, 4, 0.25, 0.03, rng);
        let w = |rng: Uniform| EdgeWarp {
            a: sym(rng, warp),
            b: sym(rng, warp),
        };
        let sigma_left = w(rng);
        let sigma_right = w(rng);
        let tau_down = w(rng);
        let tau_up = w(rng);
        let bumps = [0; 4].map(|_| (sym(rng, warp), sym(rng, warp)));
        Self {
            center: (0.5 + sym(rng, 0.05), 0.5 + sym(rng, 0.05)),
            left: (-0.35 + sym(rng, 0.05), sym(rng, 0.1)),
            right: (0.35 + sym(rng, 0.05), sym(rng, 0.1)),
            down: (sym(rng, 0.1), -0.35 + sym(rng, 0.05)),
            up: (sym(rng, 0.1), 0.35 + sym(rng, 0.05)),
            h,
            sigma_left,
            sigma_right,
            tau_down,
            tau_up,
            bumps,
        }
    }

    fn add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 + b.0, a.1 + b.1)
    }

    /// Exact Bezier nets of the four unwarped quadrants, order 1,2,3,4.
    pub fn nets(&self) -> [BezierPatch; 4] {
        let c = self.center;
        let (l, r, d, u) = (self.left, self.right, self.down, self.up);
        let add = Self::add;
        // corners listed as (0,0), (0,1), (1,0), (1,1)
        let q1 = compose_bilinear(&self.h, add(add(c, l), d), add(c, l), add(c, d), c);
        let q2 = compose_bilinear(&self.h, add(c, d), c, add(add(c, r), d), add(c, r));
        let q3 = compose_bilinear(&self.h, c, add(c, u), add(c, r), add(add(c, r), u));
        let q4 = compose_bilinear(&self.h, add(c, l), add(add(c, l), u), c, add(c, u));
        [q1, q2, q3, q4]
    }

    pub fn warps(&self) -> [SquareWarp; 4] {
        let mk = |uw, vw, bump| SquareWarp {
            u_warp: uw,
            v_warp: vw,
            bump,
        };
        [
            mk(self.sigma_left, self.tau_down, self.bumps[0]),
            mk(self.sigma_right, self.tau_down, self.bumps[1]),
            mk(self.sigma_right, self.tau_up, self.bumps[2]),
            mk(self.sigma_left, self.tau_up, self.bumps[3]),
        ]
    }

    /// Warped quadrants built on the given nets, order 1,2,3,4.
    pub fn warped(&self, nets: [BezierPatch; 4]) -> [WarpedPatch; 4] {
        let w = self.warps();
        let mut it = nets.into_iter().zip(w);
        [0; 4].map(|_| {
            let (base, map) = it.next().expect("four");
            Reparametrized { base, map }
        })
    }

    pub fn patches(&self) -> [WarpedPatch; 4] {
        self.warped(self.nets())
    }
}

/// Two bi-cubic patches sharing the edge u=1 / u=0 with a fold of `angle`
/// radians between their tangent planes. `wobble` adds curvature.
pub fn crease_pair(angle: f64, wobble: f64, rng: Uniform) -> (BezierPatch, BezierPatch) {
    let mut z = [[0.0; 4]; 4];
    for row in z.iter_mut() {
        for e in row.iter_mut() {
            *e = sym(rng, wobble);
        }
    }
    let a = BezierPatch::from_fn(3, 3, |i, j| {
        let h = if i == 3 { 0.0 } else { z[i][j] };
        Point3::new(i as f64 / 3.0 - 1.0, j as f64 / 3.0, h)
    })
    .expect("finite");
    let (c, s) = (angle.cos(), angle.sin());
    let b = BezierPatch::from_fn(3, 3, |i, j| {
        let x = i as f64 / 3.0;
        let h = if i == 0 { 0.0 } else { z[3 - i][j] * 0.5 };
        // fold the half-plane x >= 0 about the y axis
        Point3::new(x * c - h * s, j as f64 / 3.0, x * s + h * c)
    })
    .expect("finite");
    (a, b)
}

/// Bi-cubic corner patch of a ring, offset to grid cell (iu, iv) with gaps
/// wide enough that edge patches do not fold for λ up to 2.
fn ring_corner(iu: usize, iv: usize, rng: Uniform) -> BezierPatch {
    let p = random_height_patch(3, 3, 0.2, 0.03, rng);
    let (x0, y0) = (iu as f64 * 1.25, iv as f64 * 1.25);
    p.map_points(|q| Point3::new(q.x + x0, q.y + y0, q.z))
}

/// Nine-patch ring with random corner patches and each link λ drawn
/// uniformly from [lo, hi].
pub fn random_ring(rng: Uniform, lo: f64, hi: f64) -> NinePatchRing {
    let corners = [(0, 0), (0, 2), (2, 0), (2, 2)].map(|(iu, iv)| ring_corner(iu, iv, rng));
    let mut l = || lo + (hi - lo) * rng();
    let lambdas = RingLambdas {
        l12: l(),
        l14: l(),
        l32: l(),
        l36: l(),
        l74: l(),
        l78: l(),
        l96: l(),
        l98: l(),
    };
    NinePatchRing::from_corners(corners, lambdas).expect("bi-cubic corners")
}

/// Patches 1, 2, 4 of a corner: 2 to the right of 1 and 4 above, joined
/// with constant λ and κ12(v) = c12 (1-v), κ14(u) = c14 (1-u).
pub fn random_corner(
    rng: Uniform,
    lambda12: f64,
    lambda14: f64,
    c12: f64,
    c14: f64,
) -> [BezierPatch; 3] {
    let r1 = random_height_patch(3, 3, 0.2, 0.03, rng);
    let far = |rng: Uniform, k: usize| (k as f64 / 3.0 + sym(rng, 0.03), sym(rng, 0.2));
    // column i = 1 of r2 from the link, columns 2, 3 free
    let b = r1.boundary_row(Side::U1, 0).expect("cubic");
    let inner = r1.boundary_row(Side::U1, 1).expect("cubic");
    let band = link_band(
        &b.points,
        &inner.points,
        &BernsteinPoly::constant(lambda12),
        &BernsteinPoly {
            coeffs: vec![c12, 0.0],
        },
        3,
        3,
    )
    .expect("degree 3 band");
    let mut r2 = BezierPatch::from_fn(3, 3, |i, j| match i {
        0 => b.points[j],
        1 => b.points[j] + band[j] / 3.0,
        _ => Point3::zeros(),
    })
    .expect("finite");
    for i in 2..=3 {
        for j in 0..=3 {
            let (dy, z) = far(rng, j);
            r2.set(i, j, Point3::new(1.0 + i as f64 / 3.0, dy, z));
        }
    }
    let b = r1.boundary_row(Side::V1, 0).expect("cubic");
    let inner = r1.boundary_row(Side::V1, 1).expect("cubic");
    let band = link_band(
        &b.points,
        &inner.points,
        &BernsteinPoly::constant(lambda14),
        &BernsteinPoly {
            coeffs: vec![c14, 0.0],
        },
        3,
        3,
    )
    .expect("degree 3 band");
    let mut r4 = BezierPatch::from_fn(3, 3, |i, j| match j {
        0 => b.points[i],
        1 => b.points[i] + band[i] / 3.0,
        _ => Point3::zeros(),
    })
    .expect("finite");
    for j in 2..=3 {
        for i in 0..=3 {
            let (dx, z) = far(rng, i);
            r4.set(i, j, Point3::new(dx, 1.0 + j as f64 / 3.0, z));
        }
    }
    [r1, r2, r4]
}

/// Global bi-quartic surface split 2x2, as a document with patches 1 to 4
/// around the centre vertex plus its four edges.
pub fn split_document(rng: Uniform) -> SurfaceDocument {
    let global = random_height_patch(4, 4, 0.3, 0.03, rng);
    let g = split_grid(&global, 2, 2);
    corner_document([&g[0][0], &g[1][0], &g[1][1], &g[0][1]])
}

/// Patches 1, 2, 3, 4 in canonical corner layout with edges and vertex.
pub fn corner_document(p: [&BezierPatch; 4]) -> SurfaceDocument {
    let mut d = SurfaceDocument::new();
    for (k, q) in p.iter().enumerate() {
        d.push_patch((k + 1).to_string(), q);
    }
    d.push_edge("1", Side::U1, "2", Side::U0);
    d.push_edge("4", Side::U1, "3", Side::U0);
    d.push_edge("1", Side::V1, "4", Side::V0);
    d.push_edge("2", Side::V1, "3", Side::V0);
    d.push_vertex(["1", "2", "3", "4"]);
    d
}

/// Two patches folded by `angle` along their common edge.
pub fn crease_document(angle: f64, rng: Uniform) -> SurfaceDocument {
    let (a, b) = crease_pair(angle, 0.1, rng);
    let mut d = SurfaceDocument::new();
    d.push_patch("a", &a);
    d.push_patch("b", &b);
    d.push_edge("a", Side::U1, "b", Side::U0);
    d
}

/// Ring patches named by grid position, with the joins between them.
pub fn ring_document(ring: &NinePatchRing) -> SurfaceDocument {
    let mut d = SurfaceDocument::new();
    for pos in RING_POSITIONS {
        d.push_patch(pos.to_string(), ring.patch(pos).expect("ring position"));
    }
    for (a, a_side, b, b_side) in [
        (1, Side::V1, 2, Side::V0),
        (2, Side::V1, 3, Side::V0),
        (1, Side::U1, 4, Side::U0),
        (4, Side::U1, 7, Side::U0),
        (3, Side::U1, 6, Side::U0),
        (6, Side::U1, 9, Side::U0),
        (7, Side::V1, 8, Side::V0),
        (8, Side::V1, 9, Side::V0),
    ] {
        d.push_edge(&a.to_string(), a_side, &b.to_string(), b_side);
    }
    d
}

/// Bottom and top rows of a global bi-cubic surface split n x 3, as two
/// strip documents facing each other across the missing middle row.
pub fn strip_documents(n: usize, rng: Uniform) -> (SurfaceDocument, SurfaceDocument) {
    let global = random_height_patch(3, 3, 0.3, 0.03, rng);
    let g = split_grid(&global, n, 3);
    let strip = |row: usize| {
        let mut d = SurfaceDocument::new();
        for (k, c) in g.iter().enumerate() {
            d.push_patch(format!("s{k}"), &c[row]);
        }
        for k in 1..n {
            d.push_edge(&format!("s{}", k - 1), Side::U1, &format!("s{k}"), Side::U0);
        }
        d
    };
    (strip(0), strip(2))
}
