use serde::Serialize;

use crate::driving::{DrivingFunction, Side};
use crate::error::{Error, Result};
use crate::flow::{discretize, MapSequence, SolverConfig};

/// Fate of one real point under the backward flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HittingRecord {
    pub x0: f64,
    /// Backward time at which the point reaches the singularity.
    pub hit_time: Option<f64>,
    pub side: Side,
    /// `|x(T) - U(0)|` for points that survive.
    pub terminal_gap: Option<f64>,
}

impl HittingRecord {
    /// Hit time, with survivors ordered after every hit.
    pub fn time_or_inf(&self) -> f64 {
        self.hit_time.unwrap_or(f64::INFINITY)
    }
}

/// Run `x0` through the reverse steps of `seq`; `base` is the driver value at
/// the end of the forward flow (the starting singularity).
pub fn backward_hit_on(seq: &MapSequence, base: f64, x0: f64) -> Result<HittingRecord> {
    backward_hit_capped(seq, base, x0, f64::INFINITY)
}

/// As [`backward_hit_on`], but gives up once the backward time exceeds `cap`
/// (the record then reports no hit and no gap).
pub(crate) fn backward_hit_capped(seq: &MapSequence, base: f64, x0: f64, cap: f64) -> Result<HittingRecord> {
    if x0 == base || !x0.is_finite() {
        return Err(Error::Parameter(format!("x0 = {x0} must differ from U(T) = {base}")));
    }
    let side = if x0 < base { Side::Left } else { Side::Right };
    let sign = if x0 < base { -1.0 } else { 1.0 };
    let mut x = x0;
    let mut elapsed = 0.0;
    for s in seq.steps().iter().rev() {
        let rel = x - s.u;
        if rel * sign <= 0.0 {
            // the driver overtook the point between steps
            return Ok(HittingRecord { x0, hit_time: Some(elapsed), side, terminal_gap: None });
        }
        let radicand = rel * rel - 4.0 * s.dt;
        if radicand <= 0.0 {
            let hit = elapsed + rel * rel / 4.0;
            return Ok(HittingRecord { x0, hit_time: Some(hit), side, terminal_gap: None });
        }
        x = s.u + sign * radicand.sqrt();
        elapsed += s.dt;
        if elapsed > cap {
            return Ok(HittingRecord { x0, hit_time: None, side, terminal_gap: None });
        }
    }
    Ok(HittingRecord {
        x0,
        hit_time: None,
        side,
        terminal_gap: Some((x - seq.start_value()).abs()),
    })
}

/// Backward hitting record of `x0` for the flow of `f` on `[0, T]`.
pub fn backward_hit(f: &DrivingFunction, horizon: f64, x0: f64, cfg: &SolverConfig) -> Result<HittingRecord> {
    let seq = discretize(f, horizon, cfg)?;
    backward_hit_on(&seq, f.at(horizon), x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_driver_closed_form() {
        let f = DrivingFunction::constant(0.0, 1.0).unwrap();
        let cfg = SolverConfig::default();
        let r = backward_hit(&f, 1.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(r.hit_time.unwrap(), 0.25, epsilon = 1e-12);
        assert_eq!(r.side, Side::Right);
        let r = backward_hit(&f, 1.0, 3.0, &cfg).unwrap();
        assert_eq!(r.hit_time, None);
        assert_abs_diff_eq!(r.terminal_gap.unwrap(), 5f64.sqrt(), epsilon = 1e-12);
        let r = backward_hit(&f, 1.0, -1.0, &cfg).unwrap();
        assert_eq!(r.side, Side::Left);
        assert!(backward_hit(&f, 1.0, 0.0, &cfg).is_err());
    }
}
