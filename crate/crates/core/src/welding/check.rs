use serde::Serialize;

use super::conditions::{corollary_sign_check, dyadic_sequence, lemma_stran_check, CorollaryVerdict, LemmaAudit, DEFAULT_LEVELS};
use crate::driving::{DrivingFunction, Side};
use crate::error::{Error, Result};
use crate::flow::{discretize_with_nodes, MapSequence, SolverConfig};

/// Start offsets `δ`, in units of the driver amplitude.
pub const DEFAULT_OFFSETS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Welded,
    NotWelded,
    Inconclusive,
}

/// Gaps `|x(T) - U(T)|` for starts `x(τ) = U(τ) ± δ` on one side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideGaps {
    pub tau: f64,
    pub side: Side,
    /// Absolute offsets, increasing.
    pub deltas: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Linear extrapolation of the gap to `δ = 0`.
    pub extrapolated: Option<f64>,
    /// `max(0, min(gaps, extrapolated))`.
    pub floor: f64,
    /// Offset at which the point met the singularity before `T`.
    pub hit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeldCheckReport {
    pub verdict: Verdict,
    pub epsilon_min: f64,
    /// Smallest floor over all `τ` and both sides.
    pub gap_floor: f64,
    pub per_tau: Vec<SideGaps>,
    /// First `(τ, δ)` whose forward trajectory hit the singularity.
    pub hit: Option<(f64, f64)>,
    pub horizon: f64,
    pub steps: usize,
    pub lemma: Option<LemmaAudit>,
    pub corollary: Option<CorollaryVerdict>,
    pub config: SolverConfig,
}

impl WeldCheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Default start times `{0, T/2, 3T/4, 0.9T}`.
pub fn default_taus(horizon: f64) -> Vec<f64> {
    vec![0.0, 0.5 * horizon, 0.75 * horizon, 0.9 * horizon]
}

/// Forward flow of a real point from step boundary `k0`; `None` if it meets
/// the singularity.
fn forward_real(seq: &MapSequence, k0: usize, x0: f64, sign: f64) -> Option<f64> {
    let mut x = x0;
    for s in &seq.steps()[k0..] {
        let rel = x - s.u;
        if rel * sign <= 0.0 {
            return None;
        }
        x = s.u + sign * (rel * rel + 4.0 * s.dt).sqrt();
    }
    Some(x)
}

fn extrapolate(deltas: &[f64], gaps: &[f64]) -> Option<f64> {
    if deltas.len() < 2 {
        return None;
    }
    let (d1, d2, g1, g2) = (deltas[0], deltas[1], gaps[0], gaps[1]);
    Some(g1 - d1 * (g2 - g1) / (d2 - d1))
}

/// Weld check on a sequence that has every `τ` as a step boundary.
pub fn is_welded_on(
    seq: &MapSequence,
    f: &DrivingFunction,
    taus: &[f64],
    offsets: &[f64],
    cfg: &SolverConfig,
) -> Result<WeldCheckReport> {
    let horizon = seq.total_time();
    if offsets.is_empty() || offsets.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
        return Err(Error::Parameter("offsets must be positive".into()));
    }
    if taus.is_empty() || taus.iter().any(|&t| !(0.0..horizon).contains(&t)) {
        return Err(Error::Parameter(format!("every tau must lie in [0, {horizon})")));
    }
    let amplitude = f.amplitude();
    let mut deltas: Vec<f64> = offsets.iter().map(|d| d * amplitude).collect();
    deltas.sort_by(f64::total_cmp);
    let end = f.at(horizon);
    let epsilon_min = 10.0 * cfg.trace_tolerance();

    let mut per_tau = Vec::with_capacity(2 * taus.len());
    let mut hit = None;
    for &tau in taus {
        let times = seq.times();
        let k0 = times.partition_point(|&t| t < tau);
        let k0 = if k0 > 0 && (times[k0 - 1] - tau).abs() <= (times[k0.min(times.len() - 1)] - tau).abs() {
            k0 - 1
        } else {
            k0
        };
        // The discrete driver on the first step is its midpoint sample, which can
        // sit up to κ√Δt/2 away from U(τ); offsets are measured from it.
        let start = seq.steps().get(k0).map_or(f.at(tau), |s| s.u);
        for (side, sign) in [(Side::Left, -1.0), (Side::Right, 1.0)] {
            let mut gaps = Vec::with_capacity(deltas.len());
            let mut side_hit = None;
            for &d in &deltas {
                match forward_real(seq, k0, start + sign * d, sign) {
                    Some(x) => gaps.push((x - end).abs()),
                    None => {
                        side_hit = Some(d);
                        break;
                    }
                }
            }
            if let (None, Some(d)) = (hit, side_hit) {
                hit = Some((tau, d));
            }
            let (extrapolated, floor) = if side_hit.is_some() {
                (None, 0.0)
            } else {
                let e = extrapolate(&deltas, &gaps);
                let m = gaps.iter().copied().fold(f64::INFINITY, f64::min);
                (e, m.min(e.unwrap_or(m)).max(0.0))
            };
            per_tau.push(SideGaps { tau, side, deltas: deltas.clone(), gaps, extrapolated, floor, hit: side_hit });
        }
    }
    let gap_floor = per_tau.iter().map(|g| g.floor).fold(f64::INFINITY, f64::min);
    let verdict = if hit.is_some() {
        Verdict::NotWelded
    } else if gap_floor <= epsilon_min {
        Verdict::Inconclusive
    } else {
        Verdict::Welded
    };

    let (lemma, corollary) = if horizon == f.horizon() {
        let r = dyadic_sequence(horizon, DEFAULT_LEVELS);
        (lemma_stran_check(f, &r, &r).ok(), corollary_sign_check(f, &r, &r).ok())
    } else {
        (None, None)
    };
    Ok(WeldCheckReport {
        verdict,
        epsilon_min,
        gap_floor,
        per_tau,
        hit,
        horizon,
        steps: seq.len(),
        lemma,
        corollary,
        config: cfg.clone(),
    })
}

/// Forward real-flow weld check of `f` on `[0, T]`. Empty `taus` or
/// `offsets` select the defaults.
pub fn is_welded(
    f: &DrivingFunction,
    horizon: f64,
    taus: &[f64],
    offsets: &[f64],
    cfg: &SolverConfig,
) -> Result<WeldCheckReport> {
    let taus = if taus.is_empty() { default_taus(horizon) } else { taus.to_vec() };
    let offsets = if offsets.is_empty() { DEFAULT_OFFSETS.to_vec() } else { offsets.to_vec() };
    let seq = discretize_with_nodes(f, horizon, cfg, &taus)?;
    is_welded_on(&seq, f, &taus, &offsets, cfg)
}
