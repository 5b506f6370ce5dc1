use super::{bernstein::binomial, CoreError, Point3, Side, Vec3};
use serde::{Deserialize, Serialize};

/// Where a control row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSource {
    pub patch: usize,
    pub side: Side,
    pub offset: usize,
}

/// An ordered list of control points, read as a Bezier curve on [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct ControlRow {
    pub points: Vec<Point3>,
    pub source: Option<RowSource>,
}

impl ControlRow {
    pub fn new(points: Vec<Point3>) -> Self {
        Self {
            points,
            source: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn eval(&self, t: f64) -> Point3 {
        de_casteljau(&self.points, t)
    }

    /// First derivative curve (one degree lower).
    pub fn hodograph(&self) -> ControlRow {
        let n = self.degree() as f64;
        ControlRow::new(self.points.windows(2).map(|w| (w[1] - w[0]) * n).collect())
    }

    pub fn elevate_to(&self, target: usize) -> ControlRow {
        ControlRow {
            points: elevate_points(&self.points, target),
            source: self.source,
        }
    }

    pub fn reversed(&self) -> ControlRow {
        let mut p = self.points.clone();
        p.reverse();
        ControlRow::new(p)
    }

    /// Polar form evaluated at the multiset `args` (length = degree).
    pub fn blossom(&self, args: &[f64]) -> Point3 {
        blossom(&self.points, args)
    }
}

pub(crate) fn de_casteljau(points: &[Point3], t: f64) -> Point3 {
    let mut w = points.to_vec();
    let n = w.len();
    for r in 1..n {
        for i in 0..n - r {
            w[i] = w[i] * (1.0 - t) + w[i + 1] * t;
        }
    }
    w[0]
}

pub(crate) fn blossom(points: &[Point3], args: &[f64]) -> Point3 {
    assert_eq!(args.len() + 1, points.len(), "blossom arity");
    let mut w = points.to_vec();
    let n = w.len();
    for (r, &t) in args.iter().enumerate() {
        for i in 0..n - r - 1 {
            w[i] = w[i] * (1.0 - t) + w[i + 1] * t;
        }
    }
    w[0]
}

/// Control points of the same polynomial curve over parameter interval [a,b].
pub(crate) fn reparam_interval(points: &[Point3], a: f64, b: f64) -> Vec<Point3> {
    let n = points.len() - 1;
    (0..=n)
        .map(|k| {
            let mut args = vec![a; n - k];
            args.extend(std::iter::repeat_n(b, k));
            blossom(points, &args)
        })
        .collect()
}

pub(crate) fn elevate_points(points: &[Point3], target: usize) -> Vec<Point3> {
    let mut c = points.to_vec();
    assert!(target + 1 >= c.len(), "cannot lower degree by elevation");
    while c.len() - 1 < target {
        let n = c.len() - 1;
        let m = (n + 1) as f64;
        let mut next = Vec::with_capacity(n + 2);
        next.push(c[0]);
        for i in 1..=n {
            let a = i as f64 / m;
            next.push(c[i - 1] * a + c[i] * (1.0 - a));
        }
        next.push(c[n]);
        c = next;
    }
    c
}

/// Coefficient matrix for the cubic-to-quintic raise, as exact rationals
/// `(numerator, denominator)`; row k gives the weights of q0..q3.
pub const CUBIC_TO_QUINTIC: [[(i64, i64); 4]; 6] = [
    [(1, 1), (0, 1), (0, 1), (0, 1)],
    [(2, 5), (3, 5), (0, 1), (0, 1)],
    [(1, 10), (6, 10), (3, 10), (0, 1)],
    [(0, 1), (3, 10), (6, 10), (1, 10)],
    [(0, 1), (0, 1), (3, 5), (2, 5)],
    [(0, 1), (0, 1), (0, 1), (1, 1)],
];

/// Degree-raise a cubic control row to quintic.
pub fn elevate_cubic_row_to_quintic(row: &ControlRow) -> Result<ControlRow, CoreError> {
    if row.len() != 4 {
        return Err(CoreError::WrongLength {
            expected: 4,
            got: row.len(),
        });
    }
    let q = &row.points;
    let points = CUBIC_TO_QUINTIC
        .iter()
        .map(|w| {
            w.iter().zip(q).fold(Vec3::zeros(), |acc, (&(n, d), p)| {
                acc + p * (n as f64 / d as f64)
            })
        })
        .collect();
    Ok(ControlRow {
        points,
        source: row.source,
    })
}

/// Elevation weights from degree n to n+r, derived from the product formula.
pub fn elevation_weight(n: usize, r: usize, k: usize, i: usize) -> f64 {
    if i > n || k < i || k - i > r {
        return 0.0;
    }
    binomial(n, i) * binomial(r, k - i) / binomial(n + r, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn collinear_example() {
        let row = ControlRow::new((0..4).map(|i| p(i as f64, 0.0, 0.0)).collect());
        let q = elevate_cubic_row_to_quintic(&row).unwrap();
        let want = [0.0, 0.6, 1.2, 1.8, 2.4, 3.0];
        for (a, b) in q.points.iter().zip(want) {
            assert!((a.x - b).abs() < 1e-15);
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let row = ControlRow::new(vec![p(0.0, 0.0, 0.0); 3]);
        assert!(elevate_cubic_row_to_quintic(&row).is_err());
    }

    #[test]
    fn table_agrees_with_general_weights() {
        for (k, w) in CUBIC_TO_QUINTIC.iter().enumerate() {
            for (i, &(n, d)) in w.iter().enumerate() {
                let g = elevation_weight(3, 2, k, i);
                assert!((g - n as f64 / d as f64).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn reparam_matches_evaluation() {
        let pts = vec![
            p(0.0, 0.0, 0.0),
            p(1.0, 2.0, 0.0),
            p(2.0, -1.0, 1.0),
            p(3.0, 0.5, 0.0),
        ];
        let sub = reparam_interval(&pts, 1.0, 2.0);
        for k in 0..=10 {
            let s = k as f64 / 10.0;
            let a = de_casteljau(&sub, s);
            let b = de_casteljau(&pts, 1.0 + s);
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn hodograph_is_derivative() {
        let row = ControlRow::new(vec![p(0.0, 0.0, 0.0), p(1.0, 2.0, 0.0), p(2.0, -1.0, 1.0)]);
        let h = row.hodograph();
        let e = 1e-6;
        let t = 0.4;
        let fd = (row.eval(t + e) - row.eval(t - e)) / (2.0 * e);
        assert!((h.eval(t) - fd).norm() < 1e-8);
    }
}
