use super::CoreError;

/// Largest degree served from the precomputed table.
pub const MAX_TABLE_DEGREE: usize = 12;

const fn build_table() -> [[f64; MAX_TABLE_DEGREE + 1]; MAX_TABLE_DEGREE + 1] {
    let mut t = [[0.0; MAX_TABLE_DEGREE + 1]; MAX_TABLE_DEGREE + 1];
    let mut n = 0;
    while n <= MAX_TABLE_DEGREE {
        t[n][0] = 1.0;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0.0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOMIALS: [[f64; MAX_TABLE_DEGREE + 1]; MAX_TABLE_DEGREE + 1] = build_table();

/// Binomial coefficient C(n, k) as a float. Zero when k > n.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= MAX_TABLE_DEGREE {
        return BINOMIALS[n][k];
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Bernstein basis polynomial `B_i^n(u) = C(n,i) (1-u)^(n-i) u^i`.
pub fn bernstein_eval(n: usize, i: usize, u: f64) -> Result<f64, CoreError> {
    if i > n {
        return Err(CoreError::IndexOutOfRange {
            index: i,
            degree: n,
        });
    }
    Ok(bernstein_unchecked(n, i, u))
}

pub(crate) fn bernstein_unchecked(n: usize, i: usize, u: f64) -> f64 {
    binomial(n, i) * (1.0 - u).powi((n - i) as i32) * u.powi(i as i32)
}

/// All n+1 basis values at `u`, computed by the triangular recurrence.
pub fn bernstein_all(n: usize, u: f64) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    let s = 1.0 - u;
    for k in 1..=n {
        let mut saved = 0.0;
        for j in 0..k {
            let tmp = b[j];
            b[j] = saved + s * tmp;
            saved = u * tmp;
        }
        b[k] = saved;
    }
    b
}

/// Scalar polynomial in Bernstein form on [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    pub coeffs: Vec<f64>,
}

impl BernsteinPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, CoreError> {
        if coeffs.is_empty() {
            return Err(CoreError::WrongLength {
                expected: 1,
                got: 0,
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::NonFinite);
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// de Casteljau evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        let mut w = self.coeffs.clone();
        let n = w.len();
        for r in 1..n {
            for i in 0..n - r {
                w[i] = (1.0 - t) * w[i] + t * w[i + 1];
            }
        }
        w[0]
    }

    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero();
        }
        let c = (0..n)
            .map(|i| n as f64 * (self.coeffs[i + 1] - self.coeffs[i]))
            .collect();
        Self { coeffs: c }
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.derivative().eval(t)
    }

    /// Exact degree raise to `target`.
    pub fn elevate_to(&self, target: usize) -> Self {
        assert!(target >= self.degree(), "cannot lower degree by elevation");
        let mut c = self.coeffs.clone();
        while c.len() - 1 < target {
            let n = c.len() - 1;
            let m = (n + 1) as f64;
            let mut next = Vec::with_capacity(n + 2);
            next.push(c[0]);
            for i in 1..=n {
                let a = i as f64 / m;
                next.push(a * c[i - 1] + (1.0 - a) * c[i]);
            }
            next.push(c[n]);
            c = next;
        }
        Self { coeffs: c }
    }

    /// Product of two Bernstein polynomials, degree m+n.
    pub fn multiply(&self, other: &Self) -> Self {
        let m = self.degree();
        let n = other.degree();
        let mut out = vec![0.0; m + n + 1];
        for i in 0..=m {
            for j in 0..=n {
                out[i + j] += binomial(m, i) * binomial(n, j) / binomial(m + n, i + j)
                    * self.coeffs[i]
                    * other.coeffs[j];
            }
        }
        Self { coeffs: out }
    }

    /// Least-squares fit of a degree-`degree` polynomial to samples `(t, y)`.
    pub fn fit(samples: &[(f64, f64)], degree: usize) -> Result<Self, CoreError> {
        if samples.len() < degree + 1 {
            return Err(CoreError::TooFewSamples {
                needed: degree + 1,
                got: samples.len(),
            });
        }
        let a = nalgebra::DMatrix::from_fn(samples.len(), degree + 1, |r, c| {
            bernstein_unchecked(degree, c, samples[r].0)
        });
        let y = nalgebra::DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
        let svd = a.svd(true, true);
        let x = svd
            .solve(&y, 1e-14)
            .map_err(|_| CoreError::Singular("bernstein fit"))?;
        Self::new(x.iter().copied().collect())
    }
}
