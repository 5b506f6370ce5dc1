//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::panic;
use std::time::Instant;

use fourpatch::bezier_core::{
    elevate_cubic_row_to_quintic, BernsteinPoly, BezierPatch, ControlRow, Point3, Side,
    CUBIC_TO_QUINTIC,
};
use fourpatch::construct::{
    complete_fourth_patch, constraint_residuals, fill_hole, fill_hole_deg6, quintic_betas,
    solve_hole_params, twist_check, FourthPatchParams, InteriorRule, LinkCoefficients,
    NinePatchRing, RingLambdas,
};
use fourpatch::fixtures::{
    crease_pair, random_corner, random_height_patch, random_ring, split_grid, strip_documents,
    QuadrantFamily,
};
use fourpatch::gcont::{
    check_g1_edge, check_vertex_g1, check_vertex_g2, curvature_residuals, lambda_product_residual,
    solve_edge_link, tangent_residuals, CornerConfig, EdgeCorrespondence, Tolerances, VertexValues,
    DEFAULT_FIT_DEGREES, SOLVE_SAMPLES,
};
use fourpatch::io_cli::{check_document, fillet_document, Continuity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn elevation_table() -> Outcome {
    let mut exact = true;
    for (k, row) in CUBIC_TO_QUINTIC.iter().enumerate() {
        for (i, &(num, den)) in row.iter().enumerate() {
            let (k, i) = (k as i64, i as i64);
            let (en, ed) = (binom(3, i) * binom(2, k - i), binom(5, k));
            exact &= num * ed == en * den;
        }
    }
    let mut r = rng(1);
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let pts = (0..4)
            .map(|_| {
                Point3::new(
                    r.gen_range(-1.0..1.0),
                    r.gen_range(-1.0..1.0),
                    r.gen_range(-1.0..1.0),
                )
            })
            .collect();
        let row = ControlRow::new(pts);
        let up = elevate_cubic_row_to_quintic(&row).unwrap();
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            dev = dev.max((row.eval(t) - up.eval(t)).norm());
        }
    }
    outcome(
        exact && dev < 1e-12,
        format!("rational table exact: {exact}, max curve deviation {dev:.2e} over 100 rows"),
    )
}

fn family(seed: u64) -> QuadrantFamily {
    let mut r = rng(seed);
    QuadrantFamily::random(&mut || r.gen::<f64>(), 0.1)
}

fn g1_vertex_max(patches: [fourpatch::fixtures::WarpedPatch; 4]) -> f64 {
    let c = CornerConfig::new(patches, DEFAULT_FIT_DEGREES, &tol()).unwrap();
    let rep = check_vertex_g1(&c, tol().g1).unwrap();
    max_abs(&rep.g1_residuals).max(rep.lambda_product_residual)
}

fn tangent_vertex() -> Outcome {
    let (mut clean, mut perturbed) = (0.0f64, f64::INFINITY);
    for seed in 0..10 {
        let fam = family(100 + seed);
        clean = clean.max(g1_vertex_max(fam.patches()));
        // move the shared boundary point next to V off the tangent plane,
        // identically in patches 1 and 4
        let mut nets = fam.nets();
        let (du, dv) = (nets[0].degree_u(), nets[0].degree_v());
        let n = nets[0].partial_normal();
        let q = nets[0].get(du - 1, dv) + n * 1e-2;
        nets[0].set(du - 1, dv, q);
        nets[3].set(du - 1, 0, q);
        perturbed = perturbed.min(g1_vertex_max(fam.warped(nets)));
    }
    outcome(
        clean < 1e-8 && perturbed > 1e-4,
        format!("10 warped quadrant families: max residual {clean:.2e}; perturbed min of max residual {perturbed:.2e}"),
    )
}

trait NormalAtVertex {
    fn partial_normal(&self) -> Point3;
}

impl NormalAtVertex for BezierPatch {
    fn partial_normal(&self) -> Point3 {
        let a = self.patch_derivative(1.0, 1.0, 1, 0).unwrap();
        let b = self.patch_derivative(1.0, 1.0, 0, 1).unwrap();
        a.cross(&b).normalize()
    }
}

fn curvature_vertex() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let fam = family(200 + seed);
        let c = CornerConfig::new(fam.patches(), (12, 12), &tol())
            .unwrap()
            .with_g2(&tol())
            .unwrap();
        let rep = check_vertex_g2(&c, tol().g2).unwrap();
        worst = worst.max(max_abs(&rep.g2_residuals.unwrap()));
    }
    // affine splits: κ ≡ 0 and constant λ, so the six relations reduce
    let mut reduced: f64 = 0.0;
    let mut r = rng(3);
    for _ in 0..10 {
        let g = random_height_patch(4, 4, 0.3, 0.03, &mut || r.gen::<f64>());
        let (s, t) = (r.gen_range(0.35..0.65), r.gen_range(0.35..0.65));
        let p = [
            g.restrict(0.0, s, 0.0, t),
            g.restrict(s, 1.0, 0.0, t),
            g.restrict(s, 1.0, t, 1.0),
            g.restrict(0.0, s, t, 1.0),
        ];
        let c = CornerConfig::new(p, DEFAULT_FIT_DEGREES, &tol())
            .unwrap()
            .with_g2(&tol())
            .unwrap();
        let v = c.vertex_values();
        let so = c.second_order().unwrap();
        let full = curvature_residuals(&v, &so);
        let short = [
            -so.n12 + so.n43 * v.l14,
            -so.n14 + so.n23 * v.l12,
            -so.m12 + so.m43,
            -so.m14 + so.m23,
            0.0,
            0.0,
        ];
        let kappas = max_abs(&[v.k12, v.k43, v.k14, v.k23]);
        for k in 0..6 {
            reduced = reduced.max(short[k].abs()).max((full[k] - short[k]).abs());
        }
        reduced = reduced.max(kappas);
    }
    outcome(
        worst < 1e-6 && reduced < 1e-10,
        format!("10 warped families (fit degree 12): max residual {worst:.2e}; affine-split reduction max {reduced:.2e}"),
    )
}

fn identity() -> Outcome {
    let mut r = rng(4);
    let (mut worst, mut n) = (0.0f64, 0);
    while n < 1000 {
        let mut u = |m: f64| r.gen_range(-m..m);
        let (l12, l14, k43, k23) = (u(3.0), u(3.0), u(3.0), u(3.0));
        let k12 = l14 * k43;
        let k14 = l12 * k23;
        let v = VertexValues {
            l12,
            k12,
            l43: l12 - k14 * k43,
            k43,
            l14,
            k14,
            l23: l14 - k12 * k23,
            k23,
        };
        let all = [v.l12, v.k12, v.l43, v.k43, v.l14, v.k14, v.l23, v.k23];
        if max_abs(&all) > 3.0 || [v.l12, v.l43, v.l14, v.l23].iter().any(|l| l.abs() < 1e-3) {
            continue;
        }
        debug_assert!(max_abs(&tangent_residuals(&v)) < 1e-14);
        worst = worst.max(lambda_product_residual(&v).abs());
        n += 1;
    }
    outcome(
        worst < 1e-12,
        format!("1000 solutions with |values| <= 3: max product residual {worst:.2e}"),
    )
}

fn fourth_patch() -> Outcome {
    let mut r = rng(5);
    let (mut res, mut q11): (f64, f64) = (0.0, 0.0);
    let mut all_pass = true;
    for _ in 0..50 {
        let (l12, l14) = (r.gen_range(0.5..2.0), r.gen_range(0.5..2.0));
        let [r1, r2, r4] = random_corner(&mut || r.gen::<f64>(), l12, l14, 0.0, 0.0);
        let (r3, rep) = complete_fourth_patch(
            &r1,
            &r2,
            &r4,
            &FourthPatchParams::default(),
            InteriorRule::Default,
        )
        .unwrap();
        all_pass &= r3.degree_u() == 5 && r3.degree_v() == 5;
        for (a, a_side, b_side) in [(&r2, Side::V1, Side::V0), (&r4, Side::U1, Side::U0)] {
            let e = check_g1_edge(
                a,
                &r3,
                &EdgeCorrespondence::new(0, a_side, 1, b_side, false),
                &tol(),
            )
            .unwrap();
            all_pass &= e.pass;
            res = res.max(e.link_residual);
        }
        q11 = q11.max(rep.q11_deviation);
    }
    outcome(
        all_pass && res < 1e-9 && q11 < 1e-12,
        format!(
            "50 corners: new edges pass, max link residual {res:.2e}, max q11 deviation {q11:.2e}"
        ),
    )
}

/// Hole edges in the order 2, 4, 6, 8.
fn hole_edges(ring: &NinePatchRing, p: &BezierPatch) -> Vec<fourpatch::gcont::EdgeReport> {
    [(2, Side::U1, Side::U0), (4, Side::V1, Side::V0)]
        .into_iter()
        .map(|(pos, s, t)| {
            check_g1_edge(
                ring.patch(pos).unwrap(),
                p,
                &EdgeCorrespondence::new(0, s, 1, t, false),
                &tol(),
            )
            .unwrap()
        })
        .chain(
            [(6, Side::V1, Side::V0), (8, Side::U1, Side::U0)]
                .into_iter()
                .map(|(pos, s, t)| {
                    check_g1_edge(
                        p,
                        ring.patch(pos).unwrap(),
                        &EdgeCorrespondence::new(0, s, 1, t, false),
                        &tol(),
                    )
                    .unwrap()
                }),
        )
        .collect()
}

fn rings() -> (BezierPatch, NinePatchRing, Vec<NinePatchRing>) {
    let mut r = rng(6);
    let global = random_height_patch(3, 3, 0.3, 0.04, &mut || r.gen::<f64>());
    let uniform = NinePatchRing::from_global(&global).unwrap();
    let random = (0..20)
        .map(|_| random_ring(&mut || r.gen::<f64>(), 0.5, 2.0))
        .collect();
    (global, uniform, random)
}

fn hole_quintic() -> Outcome {
    let (global, uniform, random) = rings();
    let center = split_grid(&global, 3, 3)[1][1].elevate(5, 5);
    let (p, _) = fill_hole(&uniform, None, InteriorRule::Default).unwrap();
    let mut band: f64 = 0.0;
    for i in 0..=5 {
        for j in [0, 1, 4, 5] {
            band = band
                .max((p.get(i, j) - center.get(i, j)).norm())
                .max((p.get(j, i) - center.get(j, i)).norm());
        }
    }
    let uni = hole_edges(&uniform, &p);
    let uni_ok = uni.iter().all(|e| e.pass && e.link_residual < 1e-9);
    let uni_res = uni.iter().map(|e| e.link_residual).fold(0.0, f64::max);
    let (mut res, mut cons, mut ok): (f64, f64, bool) = (0.0, 0.0, true);
    for ring in &random {
        let params = solve_hole_params(ring, None);
        cons = cons.max(max_abs(&constraint_residuals(ring, &params)));
        let (p, _) = fill_hole(ring, Some(params), InteriorRule::Default).unwrap();
        for e in hole_edges(ring, &p) {
            ok &= e.pass;
            res = res.max(e.link_residual);
        }
    }
    outcome(
        band < 1e-11 && uni_ok && ok && res < 1e-8 && cons < 1e-14,
        format!(
            "uniform ring: band deviation {band:.2e}, edge residual {uni_res:.2e}; 20 random rings: edge residual {res:.2e}, constraint residual {cons:.2e}"
        ),
    )
}

fn hole_sextic() -> Outcome {
    let (_, uniform, random) = rings();
    let (mut res, mut ok, mut pinned) = (0.0f64, true, true);
    for ring in std::iter::once(&uniform).chain(&random) {
        let (p, rep) = fill_hole_deg6(ring, InteriorRule::Default).unwrap();
        ok &= p.degree_u() == 6 && p.degree_v() == 6;
        for e in hole_edges(ring, &p) {
            ok &= e.pass;
            res = res.max(e.link_residual);
        }
        let l = ring.lambdas();
        let want = [
            (l.l14, l.l36),
            (l.l12, l.l78),
            (l.l32, l.l98),
            (l.l74, l.l96),
        ];
        let got = [rep.params.e2, rep.params.e4, rep.params.e6, rep.params.e8];
        for (e, (a, b)) in got.iter().zip(want) {
            pinned &= e.alpha1 == Some(a) && e.alpha2 == Some(b);
        }
    }
    // λ12 = 2, λ78 = 1 gives the cubic (2, 2, 1, 1) on edge 4-5
    let (global, _, _) = rings();
    let g = split_grid(&global, 3, 3);
    let corners = [
        g[0][0].clone(),
        g[0][2].clone(),
        g[2][0].clone(),
        g[2][2].clone(),
    ];
    let ring = NinePatchRing::from_corners(
        corners,
        RingLambdas {
            l12: 2.0,
            l78: 1.0,
            ..RingLambdas::uniform(1.0)
        },
    )
    .unwrap();
    let (p, _) = fill_hole_deg6(&ring, InteriorRule::Default).unwrap();
    let corr = EdgeCorrespondence::new(0, Side::V1, 1, Side::V0, false);
    let link = solve_edge_link(
        ring.patch(4).unwrap(),
        &p,
        &corr,
        SOLVE_SAMPLES,
        DEFAULT_FIT_DEGREES,
        &tol(),
    )
    .unwrap();
    let cubic = BernsteinPoly {
        coeffs: vec![2.0, 2.0, 1.0, 1.0],
    };
    let lam = link
        .samples
        .iter()
        .map(|s| (s.lambda - cubic.eval(s.t)).abs())
        .fold(0.0, f64::max);
    outcome(
        ok && res < 1e-8 && pinned && lam < 1e-9,
        format!(
            "21 rings: bi-degree (6,6), edge residual {res:.2e}, α pinned exactly: {pinned}; λ45 vs (2,2,1,1): {lam:.2e}"
        ),
    )
}

fn twist() -> Outcome {
    let mut r = rng(8);
    let (l12, l14) = (1.3, 0.7);
    let [_, r2, r4] = random_corner(&mut || r.gen::<f64>(), l12, l14, 0.0, 0.0);
    let (a23, a43) = (0.75, 1.4);
    let (b23, b43) = quintic_betas(l12, l14, a23, a43);
    let c = |alpha, lambda, beta1| LinkCoefficients {
        lambda0: lambda,
        alpha,
        lambda1: lambda,
        kappa0: 0.0,
        beta1,
        beta2: 0.0,
        kappa1: 0.0,
    };
    let m = |d: f64| {
        twist_check(&r2, &r4, &c(a23, l14, b23 + d), &c(a43, l12, b43))
            .unwrap()
            .mismatch
    };
    let base = m(0.0);
    let slopes: Vec<f64> = [1e-3, 1e-2, 1e-1].iter().map(|&d| m(d) / d).collect();
    let (lo, hi) = slopes
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &s| (a.min(s), b.max(s)));
    outcome(
        base < 1e-12 && hi / lo - 1.0 < 0.05,
        format!(
            "mismatch at δ=0 {base:.2e}; mismatch/δ for δ = 1e-3, 1e-2, 1e-1: {:.6} {:.6} {:.6}",
            slopes[0], slopes[1], slopes[2]
        ),
    )
}

fn fillet() -> Outcome {
    let mut r = rng(9);
    let (a, b) = strip_documents(4, &mut || r.gen::<f64>());
    let (doc, _) = fillet_document(&a, &b, 4, &Default::default()).unwrap();
    let rep = check_document(&doc, Continuity::G1, &tol(), DEFAULT_FIT_DEGREES).unwrap();
    let mut edge: f64 = 0.0;
    let mut ok = true;
    for e in &rep.edges {
        let x = e.result.as_ref().unwrap();
        ok &= e.pass;
        edge = edge.max(x.link_residual);
    }
    let mut vert: f64 = 0.0;
    for v in &rep.vertices {
        let x = v.result.as_ref().unwrap();
        ok &= v.pass;
        vert = vert
            .max(max_abs(&x.g1_residuals))
            .max(x.lambda_product_residual);
    }
    outcome(
        ok && edge < 1e-9 && vert < 1e-8,
        format!(
            "N=4: {} edges max residual {edge:.2e}, {} vertices max residual {vert:.2e}",
            rep.edges.len(),
            rep.vertices.len()
        ),
    )
}

fn oracle_agreement() -> Outcome {
    let mut r = rng(10);
    let across = EdgeCorrespondence::new(0, Side::U1, 1, Side::U0, false);
    let (mut disagree, mut wrong) = (0, 0);
    for k in 0..100 {
        let mut u = || r.gen::<f64>();
        let (a, b) = if k % 2 == 0 {
            let g = random_height_patch(3, 3, 0.3, 0.05, &mut u);
            g.split_u(0.25 + 0.5 * u())
        } else {
            let (l12, l14, c12) = (0.5 + 1.5 * u(), 0.5 + 1.5 * u(), u() - 0.5);
            let [r1, r2, _] = random_corner(&mut u, l12, l14, c12, 0.0);
            (r1, r2)
        };
        let e = check_g1_edge(&a, &b, &across, &tol()).unwrap();
        disagree += usize::from(e.link_pass != e.oracle_pass);
        wrong += usize::from(!e.pass);
    }
    for _ in 0..100 {
        let mut u = || r.gen::<f64>();
        let angle = (1.0 + 59.0 * u()).to_radians();
        let (a, b) = crease_pair(angle, 0.15, &mut u);
        let e = check_g1_edge(&a, &b, &across, &tol()).unwrap();
        disagree += usize::from(e.link_pass != e.oracle_pass);
        wrong += usize::from(e.pass);
    }
    outcome(
        disagree == 0 && wrong == 0,
        format!("200 instances: {disagree} disagreements, {wrong} wrong verdicts"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("degree elevation table", elevation_table),
        ("tangent-plane vertex conditions", tangent_vertex),
        ("curvature vertex conditions", curvature_vertex),
        ("lambda product identity", identity),
        ("fourth-patch completion", fourth_patch),
        ("bi-quintic hole fill", hole_quintic),
        ("bi-sextic hole fill", hole_sextic),
        ("twist consistency", twist),
        ("fillet", fillet),
        ("oracle agreement", oracle_agreement),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        failed += usize::from(!o.pass);
        println!(
            "{} criterion {:>2} {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
