//! Numerical chordal Loewner flow in the upper half-plane.
//!
//! The crate is organised around the life cycle of a driving function `U`:
//!
//! - [`driving`] builds and evaluates drivers (closed forms, the dyadic zigzag
//!   driver with left Hölder quotient `C` at `t = 1`, d-similar drivers,
//!   sampled tables) and measures their Hölder-1/2 behaviour.
//! - [`flow`] discretizes `dg/dt = 2/(g - U)` into vertical-slit maps, applies
//!   the forward map `g_T` and its inverse, traces the hull and estimates the
//!   half-plane capacity.
//! - [`welding`] runs the backward flow on real points: hitting times, the
//!   welding homeomorphism and weldedness checks.
//! - [`geometry`] inspects traced curves: bounded turning, cone angle, fitted
//!   ray angle and the attracting fixed point of self-similar hulls.
//!
//! Everything is deterministic and double precision.

pub mod complex;
pub mod driving;
pub mod error;
pub mod flow;
pub mod geometry;
mod table;
pub mod welding;

pub use driving::{DriverKind, DrivingFunction, Sampled};
pub use error::{Error, Result};
pub use flow::{MapSequence, Refinement, SolverConfig, TracedCurve};

pub use num_complex::Complex64;
