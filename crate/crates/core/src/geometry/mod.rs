//! Shape diagnostics on traced curves: bounded turning, cone and approach
//! angles, ray fits and the tip of self-similar slits.

mod angles;
mod tip;
mod turning;

pub use angles::{approach_angle, cone_angle, cone_angle_with, segment_angle_fit, ApproachAngle, AngleFit};
pub use tip::{
    geometric_convergence, self_similar_residual, tip_fixed_point, tip_fixed_point_on, tip_fixed_point_with, ConvergenceFit,
    TipEstimate, TIP_MAX_ITER, TIP_TOL,
};
pub use turning::{bounded_turning, bounded_turning_with, DiameterMode, TurningReport, EXACT_LIMIT};

/// `c(φ)`: the coefficient for which `U(t) = c√t` generates a ray at angle `φ`.
pub fn ray_coefficient(phi: f64) -> f64 {
    let pi = std::f64::consts::PI;
    2.0 * (pi - 2.0 * phi) / (phi * (pi - phi)).sqrt()
}

/// `φ(c)`: the angle of the ray generated by `U(t) = c√t`.
pub fn ray_angle(c: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 * (1.0 - c / (c * c + 16.0).sqrt())
}

/// Angle at which the hull of `U(t) = c√(1 - t)`, `c ≥ 4`, meets the real axis at `t = 1`.
pub fn hitting_angle(c: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let r = (c * c - 16.0).sqrt();
    pi - 2.0 * pi * r / (r + c)
}
