use crate::bezier_core::{BezierPatch, Side};

/// Sides in counter-clockwise order around the parameter square.
const CCW: [Side; 4] = [Side::V0, Side::U1, Side::V1, Side::U0];

/// Quarter turn of the parameter square: new(u, v) = old(v, 1 - u). The
/// old v = 0 side becomes the new u = 1 side.
pub fn rotate_quarter(p: &BezierPatch) -> BezierPatch {
    p.transpose().flip_u()
}

fn ccw_index(s: Side) -> usize {
    CCW.iter().position(|&c| c == s).expect("all sides listed")
}

/// Rotate `p` (orientation preserving) until its side `from` becomes side
/// `to`. Returns the patch and the number of quarter turns applied.
pub fn rotate_side_to(p: &BezierPatch, from: Side, to: Side) -> (BezierPatch, usize) {
    let turns = (ccw_index(to) + 4 - ccw_index(from)) % 4;
    let mut q = p.clone();
    for _ in 0..turns {
        q = rotate_quarter(&q);
    }
    (q, turns)
}

/// Reverse the parameter direction along `side` while keeping the side in
/// place (a reflection; flips the surface normal).
pub fn reflect_along(p: &BezierPatch, side: Side) -> BezierPatch {
    if side.is_u_side() {
        p.flip_v()
    } else {
        p.flip_u()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier_core::Point3;

    fn sample() -> BezierPatch {
        BezierPatch::from_fn(2, 3, |i, j| {
            Point3::new(
                i as f64,
                j as f64 * 1.5,
                (i * j) as f64 * 0.1 + i as f64 * 0.01,
            )
        })
        .unwrap()
    }

    fn side_points(p: &BezierPatch, s: Side) -> Vec<Point3> {
        (0..=10)
            .map(|k| {
                let (u, v) = s.param(k as f64 / 10.0);
                p.eval(u, v)
            })
            .collect()
    }

    fn same_set(a: &[Point3], b: &[Point3]) -> bool {
        let fwd = a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-13);
        let rev = a
            .iter()
            .zip(b.iter().rev())
            .all(|(x, y)| (x - y).norm() < 1e-13);
        fwd || rev
    }

    #[test]
    fn quarter_turn_formula() {
        let p = sample();
        let q = rotate_quarter(&p);
        assert_eq!((q.degree_u(), q.degree_v()), (3, 2));
        for (u, v) in [(0.2, 0.7), (0.9, 0.1)] {
            assert!((q.eval(u, v) - p.eval(v, 1.0 - u)).norm() < 1e-14);
        }
    }

    #[test]
    fn every_side_reaches_every_side() {
        let p = sample();
        for from in CCW {
            for to in CCW {
                let (q, _) = rotate_side_to(&p, from, to);
                assert!(
                    same_set(&side_points(&p, from), &side_points(&q, to)),
                    "{from:?} -> {to:?}"
                );
            }
        }
    }

    #[test]
    fn reflection_reverses_side() {
        let p = sample();
        for s in CCW {
            let q = reflect_along(&p, s);
            let a = side_points(&p, s);
            let mut b = side_points(&q, s);
            b.reverse();
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-13));
        }
    }
}
