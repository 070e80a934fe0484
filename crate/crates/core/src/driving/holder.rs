//! Hölder-1/2 quotients `|U(s) - U(s')| / √|s - s'|` of a driver.
//!
//! Pointwise limsup/liminf values are limits and cannot be computed; what is
//! reported here are finite-scale proxies over an explicit ladder of `h`
//! values, and every result carries that ladder.

use serde::Serialize;

use super::{DriverKind, DrivingFunction};
use crate::error::{Error, Result};

/// Default number of rungs of a one-sided ladder.
pub const DEFAULT_LADDER_LEN: usize = 20;

/// Default margin around the threshold 4 when classifying a point.
pub const DEFAULT_MARGIN: f64 = 0.05;

/// The critical Hölder-1/2 constant for slit generation.
const THRESHOLD: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A strictly decreasing list of positive step lengths `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ladder {
    rungs: Vec<f64>,
}

impl Ladder {
    pub fn from_rungs(mut rungs: Vec<f64>) -> Result<Self> {
        if rungs.is_empty() || rungs.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::Parameter("ladder rungs must be positive and finite".into()));
        }
        rungs.sort_by(|a, b| b.total_cmp(a));
        rungs.dedup();
        Ok(Self { rungs })
    }

    /// `h_max · ratio^j` for `j = 0..len`.
    pub fn geometric(h_max: f64, ratio: f64, len: usize) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Parameter(format!("ladder ratio must lie in (0, 1), got {ratio}")));
        }
        let mut h = h_max;
        let mut rungs = Vec::with_capacity(len);
        for _ in 0..len {
            rungs.push(h);
            h *= ratio;
        }
        Self::from_rungs(rungs)
    }

    /// `h_max · ratio^j` down to (and including, up to rounding) `h_min`.
    pub fn down_to(h_max: f64, ratio: f64, h_min: f64) -> Result<Self> {
        if !(h_min > 0.0 && h_min <= h_max) {
            return Err(Error::Parameter(format!("need 0 < h_min <= h_max, got {h_min} and {h_max}")));
        }
        let len = ((h_min / h_max).ln() / ratio.ln() + 1e-9).floor() as usize + 1;
        Self::geometric(h_max, ratio, len)
    }

    /// Two interleaved dyadic ladders `h_max·2^-j` and `(3/4)·h_max·2^-j`.
    /// At `t0 = 1` with `h_max = 1` these land on the zeros and the peaks of
    /// the zigzag driver, exposing both its liminf and its limsup.
    pub fn interleaved(h_max: f64, h_min: f64) -> Result<Self> {
        let a = Self::down_to(h_max, 0.5, h_min)?;
        let mut rungs = a.rungs;
        if 0.75 * h_max >= h_min {
            rungs.extend(Self::down_to(0.75 * h_max, 0.5, h_min)?.rungs);
        }
        Self::from_rungs(rungs)
    }

    /// Default one-sided ladder: ratio 1/2 starting at `3/4` of the span.
    pub fn one_sided(span: f64, h_min: f64) -> Result<Self> {
        Self::down_to(0.75 * span, 0.5, h_min)
    }

    /// Default ladder for the regularity classifier at a point with
    /// available left span `span`.
    pub fn classification(span: f64) -> Result<Self> {
        Self::interleaved(span, span * (-(DEFAULT_LADDER_LEN as f64)).exp2())
    }

    pub fn rungs(&self) -> &[f64] {
        &self.rungs
    }

    pub fn smallest(&self) -> f64 {
        self.rungs[self.rungs.len() - 1]
    }

    pub fn largest(&self) -> f64 {
        self.rungs[0]
    }
}

/// One-sided quotients at a point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneSided {
    pub t0: f64,
    pub side: Side,
    /// `(h, |U(t0 ± h) - U(t0)| / √h)` for every rung.
    pub rungs: Vec<(f64, f64)>,
    /// Supremum over the ladder.
    pub sup: f64,
    /// Quotient at the smallest rung: the limsup proxy.
    pub at_smallest: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    Irregular,
    NeitherEstimable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityVerdict {
    pub t0: f64,
    pub class: Regularity,
    /// Infimum of the left quotient over the finest decade of the ladder.
    pub liminf_proxy: f64,
    /// Supremum of the left quotient over the finest decade of the ladder.
    pub limsup_proxy: f64,
    /// `h` range of the finest decade.
    pub h_range: (f64, f64),
    pub margin: f64,
    /// Every rung of the ladder has a quotient at or above `4 + margin`.
    pub exceeds_threshold_all_scales: bool,
    pub rungs: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderReport {
    /// Largest quotient found anywhere in this report.
    pub global_norm: f64,
    /// Largest quotient over all pairs of the uniform grid.
    pub grid_norm: f64,
    pub grid_size: usize,
    /// `(t0, ladder sup)` of the left quotient.
    pub left_at: Vec<(f64, f64)>,
    /// `(t0, ladder sup)` of the right quotient.
    pub right_at: Vec<(f64, f64)>,
    /// Smallest `h` used by any ladder.
    pub window: f64,
    pub classification: Vec<RegularityVerdict>,
}

/// `max |U(t_i) - U(t_j)| / √|t_i - t_j|` over all pairs of the uniform grid
/// with `grid_size` nodes on `[0, T]`. Nested grids give nondecreasing values.
pub fn holder_global(f: &DrivingFunction, grid_size: usize) -> f64 {
    let n = grid_size.max(2);
    let horizon = f.horizon();
    let last = (n - 1) as f64;
    let t: Vec<f64> = (0..n).map(|i| horizon * i as f64 / last).collect();
    let u: Vec<f64> = t.iter().map(|&s| f.shape(s)).collect();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let q = (u[j] - u[i]).abs() / (t[j] - t[i]).sqrt();
            best = best.max(q);
        }
    }
    best
}

fn check_resolution(f: &DrivingFunction, t0: f64, h_min: f64) -> Result<()> {
    if t0 - h_min == t0 || t0 + h_min == t0 || h_min < f.horizon() * f64::EPSILON * 4.0 {
        return Err(Error::Resolution(format!(
            "h = {h_min:e} is not representable next to t0 = {t0}"
        )));
    }
    if let DriverKind::Sampled(s) = f.kind() {
        if h_min < s.min_spacing() {
            return Err(Error::Resolution(format!(
                "h = {h_min:e} is finer than the sample spacing {:e}",
                s.min_spacing()
            )));
        }
    }
    Ok(())
}

/// One-sided quotients of `f` at `t0` over an explicit ladder.
pub fn one_sided_quotients(
    f: &DrivingFunction,
    t0: f64,
    side: Side,
    ladder: &Ladder,
) -> Result<OneSided> {
    let horizon = f.horizon();
    let span = match side {
        Side::Left if t0 > 0.0 && t0 <= horizon => t0,
        Side::Right if t0 >= 0.0 && t0 < horizon => horizon - t0,
        _ => return Err(Error::Domain { t: t0, horizon }),
    };
    if ladder.largest() > span * (1.0 + 1e-12) {
        return Err(Error::Parameter(format!(
            "ladder reaches h = {} beyond the available span {span}",
            ladder.largest()
        )));
    }
    check_resolution(f, t0, ladder.smallest())?;
    let base = f.shape(t0);
    let rungs: Vec<(f64, f64)> = ladder
        .rungs()
        .iter()
        .map(|&h| {
            let s = match side {
                Side::Left => (t0 - h).max(0.0),
                Side::Right => (t0 + h).min(horizon),
            };
            (h, (f.shape(s) - base).abs() / h.sqrt())
        })
        .collect();
    let sup = rungs.iter().map(|r| r.1).fold(0.0, f64::max);
    let at_smallest = rungs[rungs.len() - 1].1;
    Ok(OneSided { t0, side, rungs, sup, at_smallest })
}

/// Left quotient `|U(t0) - U(t0 - h)| / √h` on the default dyadic ladder
/// from `3/4·t0` down to `h_min`.
pub fn holder_left_at(f: &DrivingFunction, t0: f64, h_min: f64) -> Result<OneSided> {
    if !(t0 > 0.0 && t0 <= f.horizon()) {
        return Err(Error::Domain { t: t0, horizon: f.horizon() });
    }
    if !(h_min > 0.0 && h_min < t0) {
        return Err(Error::Parameter(format!("need 0 < h_min < t0, got h_min = {h_min}")));
    }
    let ladder = Ladder::one_sided(t0, h_min.min(0.75 * t0))?;
    one_sided_quotients(f, t0, Side::Left, &ladder)
}

/// Right quotient `|U(t0 + h) - U(t0)| / √h`, mirror of [`holder_left_at`].
pub fn holder_right_at(f: &DrivingFunction, t0: f64, h_min: f64) -> Result<OneSided> {
    let horizon = f.horizon();
    if !(t0 >= 0.0 && t0 < horizon) {
        return Err(Error::Domain { t: t0, horizon });
    }
    let span = horizon - t0;
    if !(h_min > 0.0 && h_min < span) {
        return Err(Error::Parameter(format!("need 0 < h_min < T - t0, got h_min = {h_min}")));
    }
    let ladder = Ladder::one_sided(span, h_min.min(0.75 * span))?;
    one_sided_quotients(f, t0, Side::Right, &ladder)
}

/// Classify `t0` as regular or irregular with the default margin.
pub fn classify_regularity(
    f: &DrivingFunction,
    t0: f64,
    ladder: &Ladder,
) -> Result<RegularityVerdict> {
    classify_regularity_with(f, t0, ladder, DEFAULT_MARGIN)
}

/// Regular: limsup proxy `< 4 - margin`. Irregular: liminf proxy
/// `< 4 - margin` and limsup proxy `>= 4 + margin`. Anything else is not
/// decidable at the resolved scales. Proxies are taken over the finest
/// decade `[h_min, 10 h_min]` of the ladder.
pub fn classify_regularity_with(
    f: &DrivingFunction,
    t0: f64,
    ladder: &Ladder,
    margin: f64,
) -> Result<RegularityVerdict> {
    let q = one_sided_quotients(f, t0, Side::Left, ladder)?;
    let h_lo = ladder.smallest();
    let h_hi = 10.0 * h_lo;
    let finest = q.rungs.iter().filter(|(h, _)| *h <= h_hi * (1.0 + 1e-12));
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &(_, v) in finest {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let class = if hi < THRESHOLD - margin {
        Regularity::Regular
    } else if lo < THRESHOLD - margin && hi >= THRESHOLD + margin {
        Regularity::Irregular
    } else {
        Regularity::NeitherEstimable
    };
    let exceeds = q.rungs.iter().all(|r| r.1 >= THRESHOLD + margin);
    Ok(RegularityVerdict {
        t0,
        class,
        liminf_proxy: lo,
        limsup_proxy: hi,
        h_range: (h_lo, h_hi.min(ladder.largest())),
        margin,
        exceeds_threshold_all_scales: exceeds,
        rungs: q.rungs,
    })
}

/// Global norm plus one-sided estimates and a classification at each time.
pub fn holder_report(f: &DrivingFunction, grid_size: usize, times: &[f64]) -> Result<HolderReport> {
    let horizon = f.horizon();
    let grid_norm = holder_global(f, grid_size);
    let mut left_at = Vec::new();
    let mut right_at = Vec::new();
    let mut classification = Vec::new();
    let mut window = f64::INFINITY;
    let ladder_floor = (-(DEFAULT_LADDER_LEN as f64 - 1.0)).exp2();
    for &t0 in times {
        if t0 > 0.0 && t0 <= horizon {
            let q = holder_left_at(f, t0, 0.75 * t0 * ladder_floor)?;
            window = window.min(q.rungs[q.rungs.len() - 1].0);
            left_at.push((t0, q.sup));
            let ladder = Ladder::classification(t0)?;
            window = window.min(ladder.smallest());
            classification.push(classify_regularity(f, t0, &ladder)?);
        }
        if t0 >= 0.0 && t0 < horizon {
            let span = horizon - t0;
            let q = holder_right_at(f, t0, 0.75 * span * ladder_floor)?;
            window = window.min(q.rungs[q.rungs.len() - 1].0);
            right_at.push((t0, q.sup));
        }
    }
    let pointwise = left_at.iter().chain(right_at.iter()).map(|p| p.1);
    let ladders = classification.iter().flat_map(|c| c.rungs.iter().map(|r| r.1));
    let global_norm = pointwise.chain(ladders).fold(grid_norm, f64::max);
    Ok(HolderReport {
        global_norm,
        grid_norm,
        grid_size: grid_size.max(2),
        left_at,
        right_at,
        window,
        classification,
    })
}
