use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::TracedCurve;

/// Largest curve accepted in [`DiameterMode::ExactPairwise`].
pub const EXACT_LIMIT: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiameterMode {
    /// Subarc diameter approximated by the largest distance from either
    /// endpoint; within a factor 2 of the truth.
    EndpointApprox,
    /// True subarc diameter, quadratic memory-free recursion.
    ExactPairwise,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurningReport {
    /// `max diam(γ[i..j]) / |γᵢ - γⱼ|`.
    pub ratio: f64,
    pub pair: (usize, usize),
    pub mode: DiameterMode,
    pub points: usize,
    /// Pairs closer than this were skipped.
    pub min_chord: f64,
    pub trace_tolerance: f64,
}

/// Turning ratio with chords shorter than 10× the trace tolerance excluded.
pub fn bounded_turning(curve: &TracedCurve, mode: DiameterMode) -> Result<TurningReport> {
    bounded_turning_with(curve, mode, 10.0 * curve.trace_tolerance())
}

pub fn bounded_turning_with(curve: &TracedCurve, mode: DiameterMode, min_chord: f64) -> Result<TurningReport> {
    let z: Vec<Complex64> = curve.zs().collect();
    let n = z.len();
    if n < 3 {
        return Err(Error::Degenerate(format!("need at least 3 points, got {n}")));
    }
    let best = match mode {
        DiameterMode::EndpointApprox => endpoint_approx(&z, min_chord),
        DiameterMode::ExactPairwise => {
            if n > EXACT_LIMIT {
                return Err(Error::Parameter(format!(
                    "exact pairwise diameters are limited to {EXACT_LIMIT} points, got {n}"
                )));
            }
            exact_pairwise(&z, min_chord)
        }
    };
    match best {
        Some((ratio, pair)) => Ok(TurningReport {
            ratio,
            pair,
            mode,
            points: n,
            min_chord,
            trace_tolerance: curve.trace_tolerance(),
        }),
        None => Err(Error::Degenerate(format!("every chord is shorter than {min_chord:e}"))),
    }
}

fn update(best: &mut Option<(f64, (usize, usize))>, diam: f64, chord: f64, min_chord: f64, pair: (usize, usize)) {
    if chord < min_chord || chord == 0.0 {
        return;
    }
    let r = diam / chord;
    if best.map_or(true, |(b, _)| r > b) {
        *best = Some((r, pair));
    }
}

/// `max(A, B) / c = max(A / c, B / c)`, so the two endpoint distances are
/// scanned in separate passes with running maxima.
fn endpoint_approx(z: &[Complex64], min_chord: f64) -> Option<(f64, (usize, usize))> {
    let n = z.len();
    let mut best = None;
    // farthest point of γ[i..j] from γᵢ
    for i in 0..n {
        let mut run = 0.0f64;
        for j in i + 1..n {
            let d = (z[j] - z[i]).norm();
            run = run.max(d);
            update(&mut best, run, d, min_chord, (i, j));
        }
    }
    // farthest point of γ[i..j] from γⱼ
    for j in 0..n {
        let mut run = 0.0f64;
        for i in (0..j).rev() {
            let d = (z[j] - z[i]).norm();
            run = run.max(d);
            update(&mut best, run, d, min_chord, (i, j));
        }
    }
    best
}

/// `diam[i][j] = max(diam[i+1][j], diam[i][j-1], |γᵢ - γⱼ|)`, one row at a time.
fn exact_pairwise(z: &[Complex64], min_chord: f64) -> Option<(f64, (usize, usize))> {
    let n = z.len();
    let mut best = None;
    let mut below = vec![0.0f64; n];
    let mut row = vec![0.0f64; n];
    for i in (0..n).rev() {
        row[i] = 0.0;
        for j in i + 1..n {
            let d = (z[j] - z[i]).norm();
            row[j] = d.max(row[j - 1]).max(below[j]);
            update(&mut best, row[j], d, min_chord, (i, j));
        }
        std::mem::swap(&mut below, &mut row);
    }
    best
}
