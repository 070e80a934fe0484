use num_complex::Complex64;
use serde::Serialize;

use super::config::SolverConfig;
use super::sequence::{discretize, MapSequence};
use crate::driving::DrivingFunction;
use crate::complex::slit_tip;
use crate::error::{Error, Result};
use crate::table;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    pub z: Complex64,
}

/// Time-stamped samples of the curve `γ` generated by a driver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracedCurve {
    pub points: Vec<CurvePoint>,
    pub driver_id: String,
    pub horizon: f64,
    /// Number of elementary steps in the underlying sequence.
    pub steps: usize,
    /// Smallest step in the underlying sequence.
    pub min_step: f64,
    pub config: SolverConfig,
}

impl TracedCurve {
    /// Wrap externally computed points (e.g. for the geometry routines).
    pub fn from_points(points: Vec<CurvePoint>, driver_id: impl Into<String>, config: SolverConfig) -> Self {
        let horizon = points.last().map_or(0.0, |p| p.t);
        Self {
            points,
            driver_id: driver_id.into(),
            horizon,
            steps: 0,
            min_step: 0.0,
            config,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn base(&self) -> Complex64 {
        self.points[0].z
    }

    pub fn tip(&self) -> Complex64 {
        self.points[self.points.len() - 1].z
    }

    pub fn zs(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|p| p.z)
    }

    /// Points with `t ≤ t_max`.
    pub fn prefix(&self, t_max: f64) -> Self {
        let n = self.points.partition_point(|p| p.t <= t_max);
        Self {
            points: self.points[..n].to_vec(),
            horizon: t_max.min(self.horizon),
            ..self.clone()
        }
    }

    pub fn trace_tolerance(&self) -> f64 {
        self.config.trace_tolerance()
    }

    /// CSV with header `t,re,im`.
    pub fn to_csv(&self) -> String {
        table::write(&["t", "re", "im"], self.points.iter().map(|p| [p.t, p.z.re, p.z.im]))
    }

    pub fn from_csv(text: &str, driver_id: impl Into<String>, config: SolverConfig) -> Result<Self> {
        let points = table::read(text, &["t", "re", "im"])?
            .into_iter()
            .map(|r| CurvePoint { t: r[0], z: Complex64::new(r[1], r[2]) })
            .collect();
        Ok(Self::from_points(points, driver_id, config))
    }
}

/// Points interleaved per batch in [`tips_at_boundaries`].
const BATCH: usize = 8;

/// `γ(t_k)` for nondecreasing boundary indices `ks`.
fn tips_at_boundaries(seq: &MapSequence, ks: &[usize], y0: f64) -> Vec<CurvePoint> {
    let mut out = Vec::with_capacity(ks.len());
    for chunk in ks.chunks(BATCH) {
        // seed each point just above the last step it has seen
        let mut inner: Vec<usize> = Vec::with_capacity(chunk.len());
        let mut ws: Vec<Complex64> = Vec::with_capacity(chunk.len());
        for &k in chunk {
            if k == 0 {
                inner.push(0);
                ws.push(Complex64::new(seq.start_value(), 0.0));
            } else if y0 > 0.0 {
                inner.push(k);
                ws.push(Complex64::new(seq.steps()[k - 1].u, y0));
            } else {
                let s = seq.steps()[k - 1];
                inner.push(k - 1);
                ws.push(slit_tip(s.u, s.dt));
            }
        }
        seq.pull_back_many(&inner, &mut ws);
        out.extend(chunk.iter().zip(ws).map(|(&k, z)| CurvePoint { t: seq.times()[k], z }));
    }
    out
}

/// Sample `γ` at evenly strided step boundaries of `seq`, at most
/// `cfg.max_points` points including both ends.
pub fn trace_sequence(seq: &MapSequence, cfg: &SolverConfig, driver_id: impl Into<String>) -> TracedCurve {
    let n = seq.len();
    let stride = n.div_ceil(cfg.max_points.max(2) - 1).max(1);
    let mut ks: Vec<usize> = (0..n).step_by(stride).collect();
    ks.push(n);
    let points = tips_at_boundaries(seq, &ks, cfg.tip_offset);
    TracedCurve {
        points,
        driver_id: driver_id.into(),
        horizon: seq.total_time(),
        steps: n,
        min_step: seq.steps().iter().map(|s| s.dt).fold(f64::INFINITY, f64::min),
        config: cfg.clone(),
    }
}

/// Discretize `f` on `[0, T]` and trace the generated curve.
pub fn trace(f: &DrivingFunction, horizon: f64, cfg: &SolverConfig) -> Result<TracedCurve> {
    let seq = discretize(f, horizon, cfg)?;
    Ok(trace_sequence(&seq, cfg, f.id()))
}

/// `γ(t)` at the given times (each must lie in `[0, T]`).
pub fn trace_at_times(seq: &MapSequence, times: &[f64]) -> Result<Vec<CurvePoint>> {
    let horizon = seq.total_time();
    times
        .iter()
        .map(|&t| {
            if !(0.0..=horizon * (1.0 + 1e-12)).contains(&t) {
                return Err(Error::Domain { t, horizon });
            }
            Ok(CurvePoint { t, z: seq.curve_at(t) })
        })
        .collect()
}
