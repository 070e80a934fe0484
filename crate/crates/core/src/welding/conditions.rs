use serde::Serialize;

use crate::driving::DrivingFunction;
use crate::error::{Error, Result};

/// Number of sequence terms checked by default.
pub const DEFAULT_LEVELS: usize = 12;

const GRID: usize = 2048;

/// `T(1 - 2⁻ⁿ)` for `n = 1..=levels`; for the zigzag driver these are its zeros `rₙ`.
pub fn dyadic_sequence(horizon: f64, levels: usize) -> Vec<f64> {
    (1..=levels).map(|n| horizon * (1.0 - (-(n as f64)).exp2())).collect()
}

fn validate(f: &DrivingFunction, s_seq: &[f64], t_seq: &[f64]) -> Result<()> {
    let horizon = f.horizon();
    if s_seq.len() != t_seq.len() || s_seq.is_empty() {
        return Err(Error::Parameter("s and t sequences must be nonempty and of equal length".into()));
    }
    for &x in s_seq.iter().chain(t_seq) {
        if !(x > 0.0 && x < horizon) {
            return Err(Error::Domain { t: x, horizon });
        }
    }
    if s_seq.windows(2).any(|w| w[0] >= w[1]) || t_seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("sequences must be strictly increasing".into()));
    }
    Ok(())
}

/// Extremes of `U - U(T)` on `[a, T]` over a uniform grid plus the driver's kinks.
fn extremes(f: &DrivingFunction, a: f64) -> (f64, f64) {
    let horizon = f.horizon();
    let end = f.at(horizon);
    let grid = (0..=GRID).map(|i| a + (horizon - a) * i as f64 / GRID as f64);
    grid.chain(f.breakpoints(a, horizon))
        .map(|t| f.at(t) - end)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaRow {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    /// `max U` on `[sₙ, T]`.
    pub m_upper: f64,
    /// `min U` on `[tₙ, T]`.
    pub m_lower: f64,
    /// `4(T - sₙ) + U(sₙ)² - 2 U(sₙ) M̄ₙ`.
    pub upper_expr: f64,
    /// `4(T - tₙ) + U(tₙ)² - 2 U(tₙ) M̲ₙ`.
    pub lower_expr: f64,
}

/// Per-level values of the two welding inequalities, with `U` translated so
/// that `U(T) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaAudit {
    pub rows: Vec<LemmaRow>,
    pub all_positive: bool,
    /// The translation applied, `U(T)`.
    pub shift: f64,
}

pub fn lemma_stran_check(f: &DrivingFunction, s_seq: &[f64], t_seq: &[f64]) -> Result<LemmaAudit> {
    validate(f, s_seq, t_seq)?;
    let horizon = f.horizon();
    let shift = f.at(horizon);
    let rows: Vec<LemmaRow> = s_seq
        .iter()
        .zip(t_seq)
        .enumerate()
        .map(|(i, (&s, &t))| {
            let (us, ut) = (f.at(s) - shift, f.at(t) - shift);
            let m_upper = extremes(f, s).1;
            let m_lower = extremes(f, t).0;
            LemmaRow {
                n: i + 1,
                s,
                t,
                m_upper,
                m_lower,
                upper_expr: 4.0 * (horizon - s) + us * us - 2.0 * us * m_upper,
                lower_expr: 4.0 * (horizon - t) + ut * ut - 2.0 * ut * m_lower,
            }
        })
        .collect();
    let all_positive = rows.iter().all(|r| r.upper_expr > 0.0 && r.lower_expr > 0.0);
    Ok(LemmaAudit { rows, all_positive, shift })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryRow {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    pub u_s: f64,
    pub u_t: f64,
    pub holds: bool,
}

/// Sign condition `U(sₙ) ≤ U(T) ≤ U(tₙ)`. Together with weldedness of every
/// `K_t`, `t < T`, it makes `K_T` welded as well.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryVerdict {
    pub holds: bool,
    pub u_end: f64,
    pub rows: Vec<CorollaryRow>,
}

pub fn corollary_sign_check(f: &DrivingFunction, s_seq: &[f64], t_seq: &[f64]) -> Result<CorollaryVerdict> {
    validate(f, s_seq, t_seq)?;
    let u_end = f.at(f.horizon());
    let rows: Vec<CorollaryRow> = s_seq
        .iter()
        .zip(t_seq)
        .enumerate()
        .map(|(i, (&s, &t))| {
            let (u_s, u_t) = (f.at(s), f.at(t));
            CorollaryRow { n: i + 1, s, t, u_s, u_t, holds: u_s <= u_end && u_end <= u_t }
        })
        .collect();
    Ok(CorollaryVerdict { holds: rows.iter().all(|r| r.holds), u_end, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driving::Sampled;

    #[test]
    fn zigzag_on_its_zeros() {
        let f = DrivingFunction::theorem14(5.0, 24).unwrap();
        let r = dyadic_sequence(1.0, DEFAULT_LEVELS);
        let audit = lemma_stran_check(&f, &r, &r).unwrap();
        assert!(audit.all_positive);
        for row in &audit.rows {
            let expected = 4.0 * (1.0 - row.s);
            assert!((row.upper_expr - expected).abs() < 1e-12);
            assert!((row.lower_expr - expected).abs() < 1e-12);
        }
        assert!(corollary_sign_check(&f, &r, &r).unwrap().holds);
    }

    #[test]
    fn zero_driver() {
        let f = DrivingFunction::constant(0.0, 1.0).unwrap();
        let s = [0.1, 0.5, 0.9];
        let audit = lemma_stran_check(&f, &s, &s).unwrap();
        assert!(audit.all_positive);
        assert!((audit.rows[1].upper_expr - 2.0).abs() < 1e-15);
    }

    #[test]
    fn backward_sqrt_expressions() {
        let f = DrivingFunction::sqrt_backward(5.0, 1.0).unwrap();
        let s: Vec<f64> = (1..=6).map(|n| 1.0 - 4f64.powi(-n)).collect();
        let audit = lemma_stran_check(&f, &s, &s).unwrap();
        for row in &audit.rows {
            let q = 4f64.powi(-(row.n as i32));
            let h = 2f64.powi(-(row.n as i32));
            assert!((row.m_upper - 5.0 * h).abs() < 1e-12);
            let expected = 4.0 * q + 25.0 * q - 10.0 * h * row.m_upper;
            assert!((row.upper_expr - expected).abs() < 1e-12);
            assert!(row.upper_expr < 0.0);
        }
        assert!(!audit.all_positive);
    }

    #[test]
    fn linear_driver_fails_the_sign_condition() {
        let f = DrivingFunction::sampled(Sampled::from_pairs([(0.0, -1.0), (1.0, 0.0)]).unwrap()).unwrap();
        let t = dyadic_sequence(1.0, 5);
        assert!(!corollary_sign_check(&f, &t, &t).unwrap().holds);
    }

    #[test]
    fn composite_driver_on_dyadic_sequences() {
        let base = DrivingFunction::theorem14(5.0, 24).unwrap();
        let f = DrivingFunction::example32(&base).unwrap();
        let r = dyadic_sequence(1.0, DEFAULT_LEVELS);
        assert!(corollary_sign_check(&f, &r, &r).unwrap().holds);
    }

    #[test]
    fn rejects_points_outside_the_domain() {
        let f = DrivingFunction::constant(0.0, 1.0).unwrap();
        assert!(matches!(lemma_stran_check(&f, &[1.0], &[0.5]), Err(Error::Domain { .. })));
        assert!(corollary_sign_check(&f, &[0.5, 0.2], &[0.1, 0.2]).is_err());
    }
}
