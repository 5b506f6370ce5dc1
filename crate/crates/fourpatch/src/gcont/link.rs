use crate::bezier_core::{BernsteinPoly, Surface};

use super::frame::{edge_frame, project2};
use super::{EdgeCorrespondence, GcontError, Tolerances};

/// Per-sample link data. `mu`/`nu`/`g2_residual` are filled by the
/// second-order solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub t: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    /// Normal component of the first-order equation, divided by net scale.
    pub g1_residual: f64,
    pub g2_residual: Option<f64>,
}

/// Link functions along one edge, fitted in Bernstein form.
#[derive(Debug, Clone)]
pub struct EdgeLink {
    pub lambda: BernsteinPoly,
    pub kappa: BernsteinPoly,
    pub mu: Option<BernsteinPoly>,
    pub nu: Option<BernsteinPoly>,
    pub fit_residual: f64,
    pub samples: Vec<LinkSample>,
    pub warnings: Vec<String>,
}

impl EdgeLink {
    pub fn max_g1_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.g1_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_g2_residual(&self) -> Option<f64> {
        self.samples
            .iter()
            .map(|s| s.g2_residual)
            .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))
    }

    /// Sample at edge parameter 0 or 1 (both are always sampled).
    pub fn end_sample(&self, at_one: bool) -> &LinkSample {
        if at_one {
            self.samples.last().expect("samples are never empty")
        } else {
            self.samples.first().expect("samples are never empty")
        }
    }
}

pub(crate) fn sample_params(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
}

fn pair_scale(a: &impl Surface, b: &impl Surface) -> f64 {
    a.scale().max(b.scale())
}

/// Largest boundary mismatch over `n` samples, divided by scale.
pub fn g0_deviation(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    n: usize,
) -> f64 {
    let scale = pair_scale(a, b);
    sample_params(n)
        .into_iter()
        .map(|t| {
            let (ua, va) = corr.a_side.param(t);
            let tb = if corr.reversed { 1.0 - t } else { t };
            let (ub, vb) = corr.b_side.param(tb);
            (a.point(ua, va) - b.point(ub, vb)).norm() / scale
        })
        .fold(0.0, f64::max)
}

/// Solve `cross_b = λ cross_a + κ tangent_a` at `n_samples` edge parameters
/// and fit λ, κ by least squares.
pub fn solve_edge_link(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    n_samples: usize,
    fit_degrees: (usize, usize),
    tol: &Tolerances,
) -> Result<EdgeLink, GcontError> {
    let need = fit_degrees.0.max(fit_degrees.1) + 1;
    if n_samples < need.max(2) {
        return Err(GcontError::TooFewSamples {
            needed: need.max(2),
            got: n_samples,
        });
    }
    let g0 = g0_deviation(a, b, corr, n_samples);
    if g0 > tol.g0 {
        return Err(GcontError::G0Mismatch { max_deviation: g0 });
    }
    let scale = pair_scale(a, b);
    let mut samples = Vec::with_capacity(n_samples);
    let mut frames = Vec::with_capacity(n_samples);
    let mut warnings = Vec::new();
    for t in sample_params(n_samples) {
        let f = edge_frame(a, b, corr, t);
        let (lambda, kappa, off) = project2(&f.cross_b, &f.cross_a, &f.tangent_a, scale, tol.rank)
            .ok_or(GcontError::DegenerateParametrization { t })?;
        if lambda.abs() < tol.lambda_min {
            return Err(GcontError::DegenerateLink { t, lambda });
        }
        if lambda < 0.0 && warnings.is_empty() {
            warnings.push(format!("negative lambda {lambda:.6e} at t = {t}"));
        }
        samples.push(LinkSample {
            t,
            lambda,
            kappa,
            mu: None,
            nu: None,
            g1_residual: off / scale,
            g2_residual: None,
        });
        frames.push(f);
    }
    let lambda = BernsteinPoly::fit(
        &samples.iter().map(|s| (s.t, s.lambda)).collect::<Vec<_>>(),
        fit_degrees.0,
    )?;
    let kappa = BernsteinPoly::fit(
        &samples.iter().map(|s| (s.t, s.kappa)).collect::<Vec<_>>(),
        fit_degrees.1,
    )?;
    let fit_residual = samples
        .iter()
        .zip(&frames)
        .map(|(s, f)| {
            let dl = lambda.eval(s.t) - s.lambda;
            let dk = kappa.eval(s.t) - s.kappa;
            (f.cross_a * dl + f.tangent_a * dk).norm() / scale
        })
        .fold(0.0, f64::max);
    Ok(EdgeLink {
        lambda,
        kappa,
        mu: None,
        nu: None,
        fit_residual,
        samples,
        warnings,
    })
}

/// Fill μ, ν from `b_cc - λ² a_cc - 2λκ a_ct - κ² a_tt = μ cross_a + ν tangent_a`.
/// λ and κ are re-solved pointwise at each new sample so that fit error does
/// not leak into the second-order residual.
pub fn solve_g2_link(
    a: &impl Surface,
    b: &impl Surface,
    corr: &EdgeCorrespondence,
    link: &EdgeLink,
    n_samples: usize,
    tol: &Tolerances,
) -> Result<EdgeLink, GcontError> {
    let degree = link.lambda.degree().max(link.kappa.degree());
    let first = solve_edge_link(
        a,
        b,
        corr,
        n_samples,
        (link.lambda.degree(), link.kappa.degree()),
        tol,
    )?;
    let scale = pair_scale(a, b);
    let mut samples = first.samples.clone();
    for s in samples.iter_mut() {
        let f = edge_frame(a, b, corr, s.t);
        let (l, k) = (s.lambda, s.kappa);
        let r = f.b_cc - f.a_cc * (l * l) - f.a_ct * (2.0 * l * k) - f.a_tt * (k * k);
        let (mu, nu, off) = project2(&r, &f.cross_a, &f.tangent_a, scale, tol.rank)
            .ok_or(GcontError::DegenerateParametrization { t: s.t })?;
        s.mu = Some(mu);
        s.nu = Some(nu);
        s.g2_residual = Some(off / scale);
    }
    let mu = BernsteinPoly::fit(
        &samples
            .iter()
            .map(|s| (s.t, s.mu.unwrap_or(0.0)))
            .collect::<Vec<_>>(),
        degree,
    )?;
    let nu = BernsteinPoly::fit(
        &samples
            .iter()
            .map(|s| (s.t, s.nu.unwrap_or(0.0)))
            .collect::<Vec<_>>(),
        degree,
    )?;
    Ok(EdgeLink {
        lambda: first.lambda,
        kappa: first.kappa,
        mu: Some(mu),
        nu: Some(nu),
        fit_residual: first.fit_residual,
        samples,
        warnings: first.warnings,
    })
}
