use serde::Serialize;

use super::hitting::backward_hit_capped;
use crate::driving::DrivingFunction;
use crate::error::{Error, Result};
use crate::flow::{discretize, MapSequence, SolverConfig};
use crate::table;

const MAX_BISECTIONS: usize = 200;
const MAX_DOUBLINGS: usize = 80;
/// Smallest target hit time, relative to `T`.
const FIRST_TARGET: f64 = 1e-4;

/// Two points absorbed at the same backward time `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeldPair {
    pub x0: f64,
    pub y0: f64,
    pub s: f64,
}

/// The welding homeomorphism `h`, sampled at target hit times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeldingMap {
    /// `U(T)`, the fixed point of `h`.
    pub base: f64,
    pub horizon: f64,
    /// Sorted by increasing `s`.
    pub pairs: Vec<WeldPair>,
    /// Welding interval `[a, b]`.
    pub domain: (f64, f64),
    /// Target hit times for which no pair could be bracketed.
    pub failures: Vec<f64>,
}

impl WeldingMap {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    /// Nodes `(x, h(x))` in increasing `x`, including the fixed point.
    fn nodes(&self) -> Vec<(f64, f64)> {
        let mut nodes: Vec<(f64, f64)> = self
            .pairs
            .iter()
            .flat_map(|p| [(p.x0, p.y0), (p.y0, p.x0)])
            .collect();
        nodes.push((self.base, self.base));
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        nodes
    }

    /// Piecewise linear `h(x)`; `None` outside the domain.
    pub fn h(&self, x: f64) -> Option<f64> {
        interpolate(&self.nodes(), x)
    }

    /// CSV with header `x0,y0,s`.
    pub fn to_csv(&self) -> String {
        table::write(&["x0", "y0", "s"], self.pairs.iter().map(|p| [p.x0, p.y0, p.s]))
    }
}

fn interpolate(nodes: &[(f64, f64)], x: f64) -> Option<f64> {
    let (first, last) = (nodes.first()?, nodes.last()?);
    if x < first.0 || x > last.0 {
        return None;
    }
    let i = nodes.partition_point(|n| n.0 < x);
    if i == 0 {
        return Some(first.1);
    }
    let (a, b) = (nodes[i - 1], nodes[i]);
    if b.0 == a.0 {
        return Some(b.1);
    }
    Some(a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0))
}

fn targets(horizon: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![horizon];
    }
    (0..n)
        .map(|j| {
            if j == n - 1 {
                horizon
            } else {
                horizon * FIRST_TARGET.powf((n - 1 - j) as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// The point on one side of `base` absorbed at backward time `s`.
///
/// Regula falsi with the Illinois modification on `d ↦ s(base ± d) - s`,
/// falling back to bisection while the upper end has not been absorbed.
/// `start` is a distance known to be absorbed before `s` (or 0).
fn solve_side(seq: &MapSequence, base: f64, sign: f64, s: f64, tol: f64, start: (f64, f64)) -> Result<f64> {
    let horizon = seq.total_time();
    let cap = if s >= horizon { f64::INFINITY } else { (2.0 * s).min(horizon) };
    let phi = |d: f64| -> Result<f64> {
        Ok(backward_hit_capped(seq, base, base + sign * d, cap)?.time_or_inf() - s)
    };
    // d = 0 is the singularity itself, absorbed at time 0
    let (mut lo, mut f_lo) = if start.0 > 0.0 { (start.0, start.1 - s) } else { (0.0, -s) };
    let mut hi = (2.0 * s.sqrt()).max(2.0 * lo);
    let mut f_hi = phi(hi)?;
    let mut doublings = 0;
    while f_hi <= 0.0 {
        if f_hi.abs() <= tol {
            return Ok(base + sign * hi);
        }
        (lo, f_lo) = (hi, f_hi);
        hi *= 2.0;
        f_hi = phi(hi)?;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(Error::Inconsistent { s });
        }
    }
    let mut lo_seen = lo > 0.0;
    let mut last_side = 0i8;
    for _ in 0..MAX_BISECTIONS {
        let width = hi - lo;
        let mut mid = if f_hi.is_finite() {
            lo - f_lo * width / (f_hi - f_lo)
        } else {
            lo + 0.5 * width
        };
        if !(mid > lo && mid < hi) {
            mid = lo + 0.5 * width;
        }
        if mid <= lo || mid >= hi || width <= 1e-14 * hi {
            break;
        }
        let f_mid = phi(mid)?;
        if f_mid.abs() <= tol {
            return Ok(base + sign * mid);
        }
        if f_mid < 0.0 {
            (lo, f_lo) = (mid, f_mid);
            lo_seen = true;
            if last_side == -1 && f_hi.is_finite() {
                f_hi *= 0.5;
            }
            last_side = -1;
        } else {
            (hi, f_hi) = (mid, f_mid);
            if last_side == 1 {
                f_lo *= 0.5;
            }
            last_side = 1;
        }
    }
    if !lo_seen {
        // no point on this side is absorbed before s
        return Err(Error::Inconsistent { s });
    }
    Ok(base + sign * if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Welding pairs on a prebuilt sequence; target times that cannot be
/// bracketed are recorded in [`WeldingMap::failures`].
pub fn welding_map_on(seq: &MapSequence, base: f64, n_pairs: usize) -> Result<WeldingMap> {
    if n_pairs == 0 {
        return Err(Error::Parameter("n_pairs must be positive".into()));
    }
    let horizon = seq.total_time();
    let tol = 1e-10 * horizon;
    let mut pairs = Vec::with_capacity(n_pairs);
    let mut failures = Vec::new();
    let mut prev: Option<WeldPair> = None;
    for s in targets(horizon, n_pairs) {
        let warm = |x: f64| (x - base).abs();
        let (left_start, right_start) = match prev {
            Some(p) => ((warm(p.x0), p.s), (warm(p.y0), p.s)),
            None => ((0.0, 0.0), (0.0, 0.0)),
        };
        let left = solve_side(seq, base, -1.0, s, tol, left_start);
        let right = solve_side(seq, base, 1.0, s, tol, right_start);
        match (left, right) {
            (Ok(x0), Ok(y0)) => {
                let pair = WeldPair { x0, y0, s };
                prev = Some(pair);
                pairs.push(pair);
            }
            (Err(Error::Inconsistent { .. }), _) | (_, Err(Error::Inconsistent { .. })) => failures.push(s),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    let domain = match (pairs.first(), pairs.last()) {
        (Some(_), Some(last)) => (last.x0, last.y0),
        _ => (base, base),
    };
    Ok(WeldingMap { base, horizon, pairs, domain, failures })
}

/// Welding map of `f` on `[0, T]`, keeping partial results.
pub fn welding_map_partial(f: &DrivingFunction, horizon: f64, n_pairs: usize, cfg: &SolverConfig) -> Result<WeldingMap> {
    let seq = discretize(f, horizon, cfg)?;
    welding_map_on(&seq, f.at(horizon), n_pairs)
}

/// Welding map of `f` on `[0, T]`; fails on the first target that cannot be
/// bracketed.
pub fn welding_map(f: &DrivingFunction, horizon: f64, n_pairs: usize, cfg: &SolverConfig) -> Result<WeldingMap> {
    let map = welding_map_partial(f, horizon, n_pairs, cfg)?;
    match map.failures.first() {
        Some(&s) => Err(Error::Inconsistent { s }),
        None => Ok(map),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasisymmetryEstimate {
    /// `max |h(x+t) - h(x)| / |h(x) - h(x-t)|` over the samples, taken
    /// symmetrically (ratio or its reciprocal).
    pub m_hat: f64,
    pub x: f64,
    pub t: f64,
    /// A difference fell below `1e-14`.
    pub unbounded: bool,
    pub samples: usize,
}

/// Empirical quasisymmetry constant of a welding map.
pub fn quasisymmetry_estimate(h: &WeldingMap) -> Result<QuasisymmetryEstimate> {
    if h.pairs.len() < 20 {
        return Err(Error::Parameter(format!(
            "quasisymmetry needs at least 20 pairs, got {}",
            h.pairs.len()
        )));
    }
    let nodes = h.nodes();
    let (a, b) = h.domain;
    let width = b - a;
    let mut best = QuasisymmetryEstimate { m_hat: 1.0, x: h.base, t: 0.0, unbounded: false, samples: 0 };
    let nx = 200;
    for i in 1..nx {
        let x = a + width * i as f64 / nx as f64;
        let Some(hx) = interpolate(&nodes, x) else { continue };
        for k in 0..40 {
            let t = 0.5 * width * (-(k as f64) / 2.0).exp2();
            let (Some(hr), Some(hl)) = (interpolate(&nodes, x + t), interpolate(&nodes, x - t)) else {
                continue;
            };
            best.samples += 1;
            let (num, den) = ((hr - hx).abs(), (hx - hl).abs());
            if num.min(den) < 1e-14 {
                return Ok(QuasisymmetryEstimate { m_hat: f64::INFINITY, x, t, unbounded: true, ..best });
            }
            let m = (num / den).max(den / num);
            if m > best.m_hat {
                best.m_hat = m;
                best.x = x;
                best.t = t;
            }
        }
    }
    Ok(best)
}
