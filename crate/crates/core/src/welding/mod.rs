//! Backward hitting times, the welding homeomorphism and weldedness checks.
//!
//! Real points under the backward flow `ẋ = -2/(x - U(T - t))` either reach
//! the singularity (they are absorbed by the hull) or survive to time `T`.
//! A hull is welded when each absorption time is shared by exactly two
//! points, one on each side of `U(T)`.

mod check;
mod conditions;
mod hitting;
mod map;

pub use check::{default_taus, is_welded, is_welded_on, SideGaps, Verdict, WeldCheckReport, DEFAULT_OFFSETS};
pub use conditions::{
    corollary_sign_check, dyadic_sequence, lemma_stran_check, CorollaryRow, CorollaryVerdict,
    LemmaAudit, LemmaRow, DEFAULT_LEVELS,
};
pub use hitting::{backward_hit, backward_hit_on, HittingRecord};
pub use map::{
    quasisymmetry_estimate, welding_map, welding_map_on, welding_map_partial, QuasisymmetryEstimate,
    WeldPair, WeldingMap,
};
