//! Branch-aware square roots and the elementary vertical-slit maps.
//!
//! Every elementary step of the discretized flow is the map of the upper
//! half-plane minus the segment `[u, u + 2i√dt]` onto the upper half-plane,
//!
//! ```text
//! forward:  z ↦ u + √((z - u)² + 4 dt)
//! inverse:  w ↦ u + √((w - u)² - 4 dt)
//! ```
//!
//! with the root taken in the closed upper half-plane. On the real axis the
//! root keeps the side of `z - u`, so real points left of the slit stay left.

use num_complex::Complex64;

/// Square root of `z` on the branch with nonnegative imaginary part.
///
/// A radicand on the positive real axis yields the nonnegative real root.
#[inline]
pub fn upper_sqrt(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if y == 0.0 {
        return if x >= 0.0 {
            Complex64::new(x.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-x).sqrt())
        };
    }
    let m = (x * x + y * y).sqrt();
    if x >= 0.0 {
        let s = (0.5 * (m + x)).sqrt();
        let t = y / (2.0 * s);
        if y > 0.0 {
            Complex64::new(s, t)
        } else {
            Complex64::new(-s, -t)
        }
    } else {
        let s = (0.5 * (m - x)).sqrt();
        Complex64::new(y / (2.0 * s), s)
    }
}

/// Pick the side of a real root from the sign of `reference`.
#[inline]
fn orient(mut r: Complex64, reference: f64) -> Complex64 {
    if r.im == 0.0 {
        r.re = r.re.abs().copysign(reference);
    }
    r
}

/// Clamp a value produced on (or numerically just below) the real axis back
/// into the closed upper half-plane. Also normalizes `-0.0` to `+0.0`.
#[inline]
pub fn clamp_upper(z: Complex64) -> Complex64 {
    if z.im > 0.0 {
        z
    } else {
        Complex64::new(z.re, 0.0)
    }
}

/// One forward slit step, relative coordinates `zeta = z - u`.
/// Returns the new relative position `√(zeta² + 4 dt)`.
#[inline]
pub fn slit_forward_rel(zeta: Complex64, dt: f64) -> Complex64 {
    orient(upper_sqrt(zeta * zeta + 4.0 * dt), zeta.re)
}

/// One inverse slit step, relative coordinates `omega = w - u`.
/// Real inputs inside `(-2√dt, 2√dt)` land on the slit.
#[inline]
pub fn slit_inverse_rel(omega: Complex64, dt: f64) -> Complex64 {
    let omega = clamp_upper(omega);
    orient(upper_sqrt(omega * omega - 4.0 * dt), omega.re)
}

/// Forward step in absolute coordinates.
#[inline]
pub fn slit_forward(z: Complex64, u: f64, dt: f64) -> Complex64 {
    slit_forward_rel(z - u, dt) + u
}

/// Inverse step in absolute coordinates.
#[inline]
pub fn slit_inverse(w: Complex64, u: f64, dt: f64) -> Complex64 {
    slit_inverse_rel(w - u, dt) + u
}

/// Tip of the slit grown by a constant driver `u` over a time `dt`.
#[inline]
pub fn slit_tip(u: f64, dt: f64) -> Complex64 {
    Complex64::new(u, 2.0 * dt.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn upper_sqrt_axes() {
        assert_eq!(upper_sqrt(c(4.0, 0.0)), c(2.0, 0.0));
        assert_eq!(upper_sqrt(c(-4.0, 0.0)), c(0.0, 2.0));
        assert_eq!(upper_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
        let r = upper_sqrt(c(0.0, -2.0));
        assert_abs_diff_eq!(r.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_driver_closed_forms() {
        // √((3i)² + 4) = √(-5) = i√5
        let w = slit_forward(c(0.0, 3.0), 0.0, 1.0);
        assert_abs_diff_eq!(w.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.im, 5f64.sqrt(), epsilon = 1e-15);
        let z = slit_inverse(w, 0.0, 1.0);
        assert_abs_diff_eq!(z.im, 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn real_points_keep_their_side() {
        assert_abs_diff_eq!(slit_forward(c(-3.0, 0.0), 0.0, 1.0).re, -13f64.sqrt());
        assert_abs_diff_eq!(slit_inverse(c(-3.0, 0.0), 0.0, 1.0).re, -5f64.sqrt());
        assert_abs_diff_eq!(slit_inverse(c(3.0, 0.0), 0.0, 1.0).re, 5f64.sqrt());
        // inside the band the preimage is on the slit
        let on = slit_inverse(c(1.0, 0.0), 0.0, 1.0);
        assert_eq!(on.re, 0.0);
        assert_abs_diff_eq!(on.im, 3f64.sqrt());
        assert_eq!(slit_inverse(c(0.5, 0.0), 0.5, 0.25), c(0.5, 1.0));
    }

    proptest! {
        #[test]
        fn upper_sqrt_squares_back(x in -50.0f64..50.0, y in -50.0f64..50.0) {
            let z = c(x, y);
            let r = upper_sqrt(z);
            prop_assert!(r.im >= 0.0);
            prop_assert!((r * r - z).norm() <= 1e-13 * (1.0 + z.norm()));
        }

        #[test]
        fn slit_maps_roundtrip(x in -5.0f64..5.0, y in 0.05f64..5.0, u in -2.0f64..2.0, dt in 1e-6f64..0.5) {
            let z = c(x, y);
            let w = slit_forward(z, u, dt);
            prop_assert!(w.im >= 0.0);
            let back = slit_inverse(w, u, dt);
            prop_assert!((back - z).norm() <= 1e-9 * (1.0 + z.norm()));
        }
    }
}
