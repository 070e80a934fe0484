//! Checks against closed forms and exact invariants of the Loewner flow.

use approx::assert_abs_diff_eq;
use loewner::driving::{holder_global, DEFAULT_DEPTH};
use loewner::flow::{discretize, hcap_of, trace, trace_sequence};
use loewner::welding::{backward_hit, welding_map};
use loewner::{Complex64, DrivingFunction, Refinement, Sampled, SolverConfig, TracedCurve};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn forward_inverse_roundtrip_on_interior_points() {
    let f = DrivingFunction::sqrt_forward(2.5, 1.0).unwrap();
    let seq = discretize(&f, 1.0, &cfg().with_base_step(1e-5)).unwrap();
    for k in 0..100 {
        let w = Complex64::new(-3.0 + 0.06 * k as f64, 0.1 + 0.03 * (k % 37) as f64);
        let z = seq.inverse_map(w).unwrap();
        assert!(z.im > 0.0);
        let back = seq.forward_map(z).unwrap();
        assert!((back - w).norm() < 1e-9, "w = {w}: {back}");
    }
}

#[test]
fn vertical_slit_points_follow_2_sqrt_t() {
    let f = DrivingFunction::constant(0.0, 1.0).unwrap();
    let curve = trace(&f, 1.0, &cfg()).unwrap();
    for p in &curve.points {
        assert_abs_diff_eq!(p.z.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.z.im, 2.0 * p.t.sqrt(), epsilon = 1e-9);
    }
}

#[test]
fn sqrt_driver_traces_a_ray_of_growing_length() {
    // c√t generates a ray, so γ(t)/√t is constant
    let f = DrivingFunction::sqrt_forward(1.5, 1.0).unwrap();
    let seq = discretize(&f, 1.0, &cfg()).unwrap();
    let unit = seq.curve_at(1.0);
    for t in [0.04, 0.25, 0.5] {
        let z = seq.curve_at(t) / t.sqrt();
        assert!((z - unit).norm() < 5.0 * cfg().trace_tolerance(), "t = {t}: {z} vs {unit}");
    }
}

#[test]
fn capacity_of_any_hull_is_2t() {
    let f = DrivingFunction::theorem14(5.0, DEFAULT_DEPTH).unwrap();
    for t in [0.5, 1.0] {
        let h = hcap_of(&f, t, &cfg()).unwrap();
        assert!(h.consistent);
        assert_abs_diff_eq!(h.value, 2.0 * t, epsilon = 1e-2);
    }
}

#[test]
fn translation_is_exact() {
    let f = DrivingFunction::theorem14(5.0, DEFAULT_DEPTH).unwrap();
    let base = trace(&f, 0.9, &cfg()).unwrap();
    let moved = trace(&f.clone().with_offset(-1.25).unwrap(), 0.9, &cfg()).unwrap();
    assert_eq!(base.len(), moved.len());
    for (z, w) in base.zs().zip(moved.zs()) {
        assert!((z - 1.25 - w).norm() <= 1e-12);
    }
}

#[test]
fn scaling_relation() {
    let u = |t: f64| 2.0 * (5.0 * t).cos() - t;
    let n = 2001;
    let big = DrivingFunction::sampled(Sampled::tabulate(0.0, 1.0, n, u).unwrap()).unwrap();
    let r = 0.5f64.sqrt();
    let small = DrivingFunction::sampled(Sampled::tabulate(0.0, 0.5, n, |t| r * u(2.0 * t)).unwrap()).unwrap();
    let a = discretize(&big, 1.0, &cfg()).unwrap();
    let b = discretize(&small, 0.5, &cfg()).unwrap();
    for k in 1..=50 {
        let t = 0.01 * k as f64;
        let d = (b.curve_at(t) - r * a.curve_at(2.0 * t)).norm();
        assert!(d <= 5.0 * cfg().trace_tolerance(), "t = {t}: {d}");
    }
    // the Hölder-1/2 norm does not see the rescaling
    assert_abs_diff_eq!(holder_global(&big, n), holder_global(&small, n), epsilon = 1e-9);
}

#[test]
fn uniform_and_adaptive_agree_on_smooth_drivers() {
    let f = DrivingFunction::sampled(Sampled::tabulate(0.0, 1.0, 101, |t| t.sin()).unwrap()).unwrap();
    let a = discretize(&f, 1.0, &cfg()).unwrap();
    let b = discretize(&f, 1.0, &cfg().with_refinement(Refinement::Uniform)).unwrap();
    assert!((a.curve_at(1.0) - b.curve_at(1.0)).norm() < cfg().trace_tolerance());
}

#[test]
fn zero_driver_hitting_times() {
    // x₀ = ±2√s at the absorption time s
    let f = DrivingFunction::constant(0.0, 1.0).unwrap();
    for x0 in [-1.5, -0.4, 0.3, 1.9] {
        let rec = backward_hit(&f, 1.0, x0, &cfg()).unwrap();
        assert_abs_diff_eq!(rec.hit_time.unwrap(), x0 * x0 / 4.0, epsilon = 1e-9);
    }
    let rec = backward_hit(&f, 1.0, 2.5, &cfg()).unwrap();
    assert_eq!(rec.hit_time, None);
}

#[test]
fn welding_map_is_a_decreasing_involution() {
    let f = DrivingFunction::sqrt_forward(1.0, 1.0).unwrap();
    let map = welding_map(&f, 1.0, 20, &cfg()).unwrap();
    let base = f.at(1.0);
    for p in &map.pairs {
        assert!(p.x0 < base && base < p.y0);
        let forth = map.h(p.x0).unwrap();
        assert_abs_diff_eq!(forth, p.y0, epsilon = 1e-9);
        assert_abs_diff_eq!(map.h(forth).unwrap(), p.x0, epsilon = 1e-9);
    }
    // sorted by absorption time: points spread outward
    for w in map.pairs.windows(2) {
        assert!(w[1].s > w[0].s && w[1].x0 < w[0].x0 && w[1].y0 > w[0].y0);
    }
}

#[test]
fn trace_csv_survives_a_roundtrip() {
    let f = DrivingFunction::sqrt_backward(2.0, 1.0).unwrap();
    let seq = discretize(&f, 0.75, &cfg()).unwrap();
    let curve = trace_sequence(&seq, &cfg(), f.id());
    let back = TracedCurve::from_csv(&curve.to_csv(), f.id(), cfg()).unwrap();
    assert_eq!(back.points, curve.points);
}
