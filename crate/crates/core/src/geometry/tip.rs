use num_complex::Complex64;
use serde::Serialize;

use crate::driving::DrivingFunction;
use crate::error::{Error, Result};
use crate::flow::{discretize, MapSequence, SolverConfig};

pub const TIP_TOL: f64 = 1e-8;
pub const TIP_MAX_ITER: usize = 200;
/// Consecutive non-contracting iterates tolerated before giving up.
const MAX_EXPANDING: usize = 10;

/// Tip `S∞` of a self-similar slit, the attracting fixed point of
/// `I(z) = f_{1-d²}(a + d(z - a))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TipEstimate {
    pub s_inf: Complex64,
    /// `|I(S∞) - S∞|`.
    pub residual: f64,
    /// Contraction estimate from successive displacement ratios.
    pub lambda: f64,
    pub iterations: usize,
    /// Self-similarity ratio `d`.
    pub d: f64,
    /// `|zₖ₊₁ - zₖ|` per iteration.
    pub displacements: Vec<f64>,
    pub steps: usize,
}

fn tip_map(prefix: &MapSequence, d: f64, a: f64) -> impl Fn(Complex64) -> Complex64 + '_ {
    move |z| prefix.pull_back(prefix.len(), a + d * (z - a))
}

/// Fixed-point iteration on a sequence covering `[0, 1 - d²]`, stopping once
/// an iterate moves less than `tol`.
pub fn tip_fixed_point_on(prefix: &MapSequence, d: f64, a: f64, tol: f64) -> Result<TipEstimate> {
    let map = tip_map(prefix, d, a);
    let mut z = prefix.curve_at(prefix.total_time());
    let mut displacements = Vec::new();
    let mut expanding = 0;
    for k in 0..TIP_MAX_ITER {
        let next = map(z);
        if !(next.im > 0.0) {
            return Err(Error::TipOnBoundary { iterations: k + 1 });
        }
        let disp = (next - z).norm();
        if let Some(&prev) = displacements.last() {
            if disp >= prev {
                expanding += 1;
                if expanding >= MAX_EXPANDING {
                    return Err(Error::TipDivergence { ratio: disp / prev, iterations: k + 1 });
                }
            } else {
                expanding = 0;
            }
        }
        displacements.push(disp);
        z = next;
        if disp < tol {
            let n = displacements.len();
            let ratios: Vec<f64> = displacements[n.saturating_sub(4)..]
                .windows(2)
                .filter(|w| w[0] > 0.0)
                .map(|w| w[1] / w[0])
                .collect();
            let lambda = if ratios.is_empty() {
                0.0
            } else {
                (ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64).exp()
            };
            return Ok(TipEstimate {
                s_inf: z,
                residual: (map(z) - z).norm(),
                lambda,
                iterations: k + 1,
                d,
                displacements,
                steps: prefix.len(),
            });
        }
    }
    Err(Error::Resolution(format!(
        "tip iteration did not reach {tol:e} in {TIP_MAX_ITER} iterations"
    )))
}

/// Tip of the hull of a self-similar driver (horizon 1).
pub fn tip_fixed_point(f: &DrivingFunction, cfg: &SolverConfig) -> Result<TipEstimate> {
    tip_fixed_point_with(f, cfg, TIP_TOL)
}

pub fn tip_fixed_point_with(f: &DrivingFunction, cfg: &SolverConfig, tol: f64) -> Result<TipEstimate> {
    let d = f
        .self_similarity()
        .ok_or_else(|| Error::Parameter(format!("driver {} is not self-similar on [0, 1]", f.id())))?;
    let seq = discretize(f, 1.0 - d * d, cfg)?;
    tip_fixed_point_on(&seq, d, f.at(1.0), tol)
}

/// `max |γ(1 - d² + d² t) - I(γ(t))|` over `times`, on a sequence that covers
/// `[0, 1 - d² + d² max(times)]` and has `1 - d²` as a step boundary.
pub fn self_similar_residual(seq: &MapSequence, d: f64, a: f64, times: &[f64]) -> Result<f64> {
    let split = 1.0 - d * d;
    let prefix = seq.prefix_until(split);
    if (prefix.total_time() - split).abs() > 1e-12 {
        return Err(Error::Parameter(format!("{split} is not a step boundary")));
    }
    let map = tip_map(&prefix, d, a);
    let mut worst = 0.0f64;
    for &t in times {
        let outer = split + d * d * t;
        if !(0.0..=1.0).contains(&t) || outer > seq.total_time() * (1.0 + 1e-12) {
            return Err(Error::Domain { t: outer, horizon: seq.total_time() });
        }
        worst = worst.max((seq.curve_at(outer) - map(seq.curve_at(t))).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination of `ln dₙ ≈ intercept + slope·n`.
    pub r2: f64,
    /// `e^slope`.
    pub rate: f64,
}

/// Least-squares fit of `ln dₙ` against `n`.
pub fn geometric_convergence(samples: &[(f64, f64)]) -> Result<ConvergenceFit> {
    if samples.len() < 3 || samples.iter().any(|&(_, d)| !(d > 0.0)) {
        return Err(Error::Parameter("need at least 3 positive distances".into()));
    }
    let m = samples.len() as f64;
    let (mx, my) = samples
        .iter()
        .fold((0.0, 0.0), |(x, y), &(n, d)| (x + n / m, y + d.ln() / m));
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(n, d) in samples {
        let (dx, dy) = (n - mx, d.ln() - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ConvergenceFit { slope, intercept: my - slope * mx, r2, rate: slope.exp() })
}
