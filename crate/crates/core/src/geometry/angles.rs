use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::TracedCurve;

/// Largest `θ` with every point at `arg(z - γ(0)) ∈ [θ, π - θ]`, ignoring
/// points within `10×` the trace tolerance of the base point.
pub fn cone_angle(curve: &TracedCurve) -> f64 {
    cone_angle_with(curve, 10.0 * curve.trace_tolerance())
}

pub fn cone_angle_with(curve: &TracedCurve, min_distance: f64) -> f64 {
    let base = curve.base();
    curve
        .zs()
        .map(|z| z - base)
        .filter(|w| w.norm() > min_distance)
        .map(|w| {
            let a = w.arg().clamp(0.0, PI);
            a.min(PI - a)
        })
        .fold(FRAC_PI_2, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleFit {
    /// Direction of the fitted ray, in `(0, π)`.
    pub angle: f64,
    /// Root mean square of `arg(z - γ(0)) - angle`.
    pub rms: f64,
    pub points: usize,
}

/// Least-squares ray through the base point: the principal axis
/// `½ arg Σ (z - γ(0))²`.
pub fn segment_angle_fit(curve: &TracedCurve) -> Result<AngleFit> {
    if curve.len() < 10 {
        return Err(Error::Parameter(format!("a ray fit needs at least 10 points, got {}", curve.len())));
    }
    let base = curve.base();
    let rel: Vec<Complex64> = curve.zs().map(|z| z - base).filter(|w| w.norm() > 0.0).collect();
    let sum: Complex64 = rel.iter().map(|w| w * w).sum();
    let mut angle = 0.5 * sum.arg();
    if angle <= 0.0 {
        angle += PI;
    }
    let ms = rel.iter().map(|w| (w.arg() - angle).powi(2)).sum::<f64>() / rel.len() as f64;
    Ok(AngleFit { angle, rms: ms.sqrt(), points: rel.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproachAngle {
    /// `arg(γ(t) - x*)` at the last sample farther than `distance` from `x*`.
    pub angle: f64,
    /// Landing point `x*` on the real axis.
    pub hit_point: f64,
    pub sample_t: f64,
    pub sample: Complex64,
    pub distance: f64,
}

/// Final approach angle of a curve that ends on the real axis, measured from
/// the positive real direction at the landing point.
pub fn approach_angle(curve: &TracedCurve, min_distance: f64) -> Result<ApproachAngle> {
    if curve.len() < 3 {
        return Err(Error::Degenerate("need at least 3 points".into()));
    }
    let tip = curve.tip();
    if tip.im > min_distance {
        return Err(Error::Degenerate(format!(
            "curve ends at height {:e}, not on the real axis",
            tip.im
        )));
    }
    let x = tip.re;
    let p = curve.points[..curve.len() - 1]
        .iter()
        .rev()
        .find(|p| (p.z - x).norm() >= min_distance)
        .ok_or_else(|| Error::Degenerate("no sample outside the landing neighbourhood".into()))?;
    Ok(ApproachAngle {
        angle: (p.z - x).arg(),
        hit_point: x,
        sample_t: p.t,
        sample: p.z,
        distance: (p.z - x).norm(),
    })
}
