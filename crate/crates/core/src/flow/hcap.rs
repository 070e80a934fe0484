use num_complex::Complex64;
use serde::Serialize;

use super::config::SolverConfig;
use super::sequence::{discretize, MapSequence};
use crate::driving::DrivingFunction;
use crate::error::Result;

/// Half-plane capacity from the far field of `g_T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HcapEstimate {
    /// Richardson-extrapolated capacity `2 b(2R) - b(R)`.
    pub value: f64,
    /// `|b(2R) - b(R)|`.
    pub error: f64,
    pub at_radius: f64,
    pub at_double_radius: f64,
    pub radius: f64,
    /// False when the two radii disagree by more than 10%.
    pub consistent: bool,
}

const ANGLES: [f64; 3] = [
    std::f64::consts::FRAC_PI_4,
    std::f64::consts::FRAC_PI_2,
    3.0 * std::f64::consts::FRAC_PI_4,
];

fn far_field(seq: &MapSequence, radius: f64) -> f64 {
    let center = seq.start_value();
    let sum: f64 = ANGLES
        .iter()
        .map(|&theta| {
            let w = Complex64::from_polar(radius, theta);
            (w * seq.forward_displacement(w + center)).re
        })
        .sum();
    sum / ANGLES.len() as f64
}

/// Average `Re[z (g_T(z) - z)]` over `|z| = R` and `|z| = 2R`.
pub fn hcap_estimate(seq: &MapSequence, cfg: &SolverConfig) -> HcapEstimate {
    let radius = cfg.far_field_radius;
    let b1 = far_field(seq, radius);
    let b2 = far_field(seq, 2.0 * radius);
    let error = (b2 - b1).abs();
    HcapEstimate {
        value: 2.0 * b2 - b1,
        error,
        at_radius: b1,
        at_double_radius: b2,
        radius,
        consistent: error <= 0.1 * b2.abs(),
    }
}

/// Discretize `f` on `[0, T]` and estimate the capacity of `K_T`.
pub fn hcap_of(f: &DrivingFunction, horizon: f64, cfg: &SolverConfig) -> Result<HcapEstimate> {
    let seq = discretize(f, horizon, cfg)?;
    Ok(hcap_estimate(&seq, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vertical_slit_capacity() {
        let f = DrivingFunction::constant(0.0, 1.0).unwrap();
        let est = hcap_of(&f, 0.5, &SolverConfig::default()).unwrap();
        assert_abs_diff_eq!(est.value, 1.0, epsilon = 1e-3);
        assert!(est.consistent);
        // height h: T = h²/4 gives hcap h²/2
        let h = 1.5;
        let est = hcap_of(&f, h * h / 4.0, &SolverConfig::default()).unwrap();
        assert_abs_diff_eq!(est.value, h * h / 2.0, epsilon = 1e-3);
    }

    #[test]
    fn capacity_adds_over_concatenation() {
        let cfg = SolverConfig::default();
        let f = DrivingFunction::sqrt_forward(1.0, 1.0).unwrap();
        let g = DrivingFunction::constant(0.7, 1.0).unwrap();
        let a = discretize(&f, 0.4, &cfg).unwrap();
        let b = discretize(&g, 0.3, &cfg).unwrap();
        let ea = hcap_estimate(&a, &cfg);
        let eb = hcap_estimate(&b, &cfg);
        let eab = hcap_estimate(&a.concat(&b), &cfg);
        let tol = 2.0 * (ea.error + eb.error + eab.error).max(1e-6);
        assert_abs_diff_eq!(eab.value, 2.0 * 0.7, epsilon = tol);
        assert_abs_diff_eq!(eab.value, ea.value + eb.value, epsilon = tol);
    }
}
