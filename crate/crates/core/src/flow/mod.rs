//! Discretized chordal Loewner flow `dg/dt = 2 / (g - U(t))`.
//!
//! The driver is frozen on each time step, so every step is an explicit
//! vertical-slit map (see [`crate::complex`]). A [`MapSequence`] is the
//! ordered list of those steps; composing them gives `g_T` and, in reverse,
//! `f_T = g_T⁻¹`.

mod config;
mod hcap;
mod sequence;
mod trace;

pub use config::{Refinement, SolverConfig, MAX_STEPS};
pub use hcap::{hcap_estimate, hcap_of, HcapEstimate};
pub use sequence::{discretize, discretize_with_nodes, MapSequence, Step};
pub use trace::{trace, trace_at_times, trace_sequence, CurvePoint, TracedCurve};
