//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use loewner::driving::{classify_regularity, holder_left_at, Ladder, Regularity, DEFAULT_DEPTH};
use loewner::flow::{discretize, hcap_of, trace, trace_sequence};
use loewner::geometry::{
    approach_angle, bounded_turning, geometric_convergence, hitting_angle, ray_angle, ray_coefficient,
    segment_angle_fit, self_similar_residual, tip_fixed_point, DiameterMode,
};
use loewner::welding::{
    corollary_sign_check, dyadic_sequence, is_welded, quasisymmetry_estimate, welding_map, Verdict,
    DEFAULT_LEVELS,
};
use loewner::{Complex64, DrivingFunction, Sampled, SolverConfig, TracedCurve};

type Outcome = Result<(bool, String), String>;

struct Criterion {
    id: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(failures: &mut Vec<String>, ok: bool, what: String) -> String {
    if !ok {
        failures.push(what.clone());
    }
    what
}

fn verdict(failures: Vec<String>, notes: Vec<String>) -> Outcome {
    let pass = failures.is_empty();
    Ok((pass, if pass { notes.join("; ") } else { format!("failed: {}", failures.join("; ")) }))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn vertical_slit() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("slit.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_loewner"))
        .args(["trace", "const:u=0", "--T", "1", "--dt", "1e-4", "--out"])
        .arg(&path)
        .status()
        .map_err(err)?;
    if !status.success() {
        return Err(format!("trace exited with {status}"));
    }
    let text = std::fs::read_to_string(&path).map_err(err)?;
    let curve = TracedCurve::from_csv(&text, "const:u=0", SolverConfig::default()).map_err(err)?;
    let tip_err = (curve.tip() - Complex64::new(0.0, 2.0)).norm();
    let f = DrivingFunction::constant(0.0, 1.0).map_err(err)?;
    let hcap = hcap_of(&f, 0.5, &SolverConfig::default()).map_err(err)?;
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    notes.push(check(&mut fails, tip_err < 2e-3, format!("|tip - 2i| = {tip_err:.2e}")));
    notes.push(check(&mut fails, (hcap.value - 1.0).abs() <= 1e-3, format!("hcap(0.5) = {:.8}", hcap.value)));
    verdict(fails, notes)
}

fn ray_angles() -> Outcome {
    let cfg = SolverConfig::default();
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    for phi in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0] {
        let c = ray_coefficient(phi);
        let back = (ray_angle(c) - phi).abs();
        check(&mut fails, back <= 1e-12, format!("phi(c(phi)) off by {back:.1e} at phi = {phi:.4}"));
        let f = DrivingFunction::sqrt_forward(c, 1.0).map_err(err)?;
        let fit = segment_angle_fit(&trace(&f, 1.0, &cfg).map_err(err)?).map_err(err)?;
        let e = (fit.angle - phi).abs();
        notes.push(check(&mut fails, e <= 1e-2, format!("phi = {phi:.4}: err {e:.1e}")));
    }
    verdict(fails, notes)
}

fn hitting_angle_oracle() -> Outcome {
    let cfg = SolverConfig::default();
    let f = DrivingFunction::sqrt_backward(5.0, 1.0).map_err(err)?;
    let curve = trace(&f, 1.0, &cfg).map_err(err)?;
    let approach = approach_angle(&curve, 10.0 * curve.trace_tolerance()).map_err(err)?;
    let expected = hitting_angle(5.0);
    let report = is_welded(&f, 1.0, &[], &[], &cfg).map_err(err)?;
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    notes.push(check(
        &mut fails,
        (expected - PI / 4.0).abs() < 1e-12,
        format!("formula angle {expected:.6}"),
    ));
    let e = (approach.angle - expected).abs();
    notes.push(check(&mut fails, e <= 2e-2, format!("approach {:.5}, err {e:.1e}", approach.angle)));
    notes.push(check(
        &mut fails,
        report.verdict != Verdict::Welded,
        format!("verdict {:?}", report.verdict),
    ));
    notes.push(check(
        &mut fails,
        report.gap_floor <= report.epsilon_min,
        format!("gap floor {:.2e} (epsilon_min {:.0e})", report.gap_floor, report.epsilon_min),
    ));
    verdict(fails, notes)
}

fn welding_symmetry() -> Outcome {
    let f = DrivingFunction::constant(0.0, 1.0).map_err(err)?;
    let map = welding_map(&f, 1.0, 50, &SolverConfig::default()).map_err(err)?;
    let worst = map.pairs.iter().map(|p| (p.y0 + p.x0).abs()).fold(0.0, f64::max);
    let qs = quasisymmetry_estimate(&map).map_err(err)?;
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    notes.push(check(&mut fails, map.pairs.len() == 50, format!("{} pairs", map.pairs.len())));
    notes.push(check(&mut fails, worst < 1e-8, format!("max |y0 + x0| = {worst:.1e}")));
    notes.push(check(&mut fails, (qs.m_hat - 1.0).abs() <= 1e-6, format!("M = {:.10}", qs.m_hat)));
    verdict(fails, notes)
}

fn zigzag(c: f64) -> Outcome {
    let cfg = SolverConfig::default();
    let f = DrivingFunction::theorem14(c, DEFAULT_DEPTH).map_err(err)?;
    let (mut fails, mut notes) = (Vec::new(), Vec::new());

    let q = holder_left_at(&f, 1.0, 3.0 * (-22f64).exp2()).map_err(err)?;
    let rel = (q.at_smallest - c).abs() / c;
    notes.push(check(&mut fails, rel <= 0.02, format!("(a) quotient {:.6}", q.at_smallest)));

    let r = dyadic_sequence(1.0, DEFAULT_LEVELS);
    let sign = corollary_sign_check(&f, &r, &r).map_err(err)?;
    notes.push(check(&mut fails, sign.holds, format!("(b) sign {}", sign.holds)));

    let weld = is_welded(&f, 1.0, &[], &[], &cfg).map_err(err)?;
    notes.push(check(
        &mut fails,
        weld.verdict == Verdict::Welded,
        format!("(c) {:?}, floor {:.3}", weld.verdict, weld.gap_floor),
    ));

    let tip = tip_fixed_point(&f, &cfg).map_err(err)?;
    notes.push(check(
        &mut fails,
        tip.residual < 1e-8 && tip.s_inf.im > 0.0 && tip.lambda < 1.0,
        format!("(d) S = {:.6}, residual {:.1e}, lambda {:.3}", tip.s_inf, tip.residual, tip.lambda),
    ));

    let end = 1.0 - (-10f64).exp2();
    let mut ratios = Vec::new();
    for cf in [cfg.clone(), cfg.refined()] {
        let seq = discretize(&f, end, &cf).map_err(err)?;
        let curve = trace_sequence(&seq, &cf, f.id());
        ratios.push(bounded_turning(&curve, DiameterMode::EndpointApprox).map_err(err)?.ratio);
    }
    let change = (ratios[1] - ratios[0]).abs() / ratios[0];
    notes.push(check(
        &mut fails,
        change <= 0.1,
        format!("(e) turning {:.4} -> {:.4}", ratios[0], ratios[1]),
    ));
    verdict(fails, notes)
}

fn self_similarity() -> Outcome {
    let cfg = SolverConfig::default();
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    for c in [1.0, 5.0, 10.0] {
        let f = DrivingFunction::theorem14(c, DEFAULT_DEPTH).map_err(err)?;
        let d = f.self_similarity().ok_or("zigzag driver is not self-similar")?;
        let seq = discretize(&f, 1.0 - (-12f64).exp2(), &cfg).map_err(err)?;
        let times: Vec<f64> = (0..=8).map(|n| 1.0 - (-(n as f64)).exp2()).collect();
        let block = self_similar_residual(&seq, d, f.at(1.0), &times).map_err(err)?;
        let tol = 5.0 * cfg.trace_tolerance();
        check(&mut fails, block <= tol, format!("C = {c}: block residual {block:.1e} > {tol:.0e}"));
        let tip = tip_fixed_point(&f, &cfg).map_err(err)?;
        let dists: Vec<(f64, f64)> = (1..=12)
            .map(|n| (n as f64, (seq.curve_at(1.0 - (-(n as f64)).exp2()) - tip.s_inf).norm()))
            .collect();
        let fit = geometric_convergence(&dists).map_err(err)?;
        check(&mut fails, fit.r2 > 0.99, format!("C = {c}: R² {:.5}", fit.r2));
        notes.push(format!("C = {c}: block {block:.1e}, rate {:.3}, R² {:.5}", fit.rate, fit.r2));
    }
    verdict(fails, notes)
}

fn invariants() -> Outcome {
    let cfg = SolverConfig::default();
    let (mut fails, mut notes) = (Vec::new(), Vec::new());

    let f = DrivingFunction::theorem14(5.0, DEFAULT_DEPTH).map_err(err)?;
    let seq = discretize(&f, 0.9, &cfg.clone().with_base_step(1e-5)).map_err(err)?;
    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let w = Complex64::new(-2.0 + 4.0 * i as f64 / 9.0, 0.2 + 2.0 * j as f64 / 9.0);
            let z = seq.inverse_map(w).map_err(err)?;
            worst = worst.max((seq.forward_map(z).map_err(err)? - w).norm());
        }
    }
    notes.push(check(&mut fails, worst < 1e-9, format!("roundtrip {worst:.1e}")));

    let u = |t: f64| (3.0 * t).sin() + 0.5 * t;
    let nodes = 4001;
    let big = DrivingFunction::sampled(Sampled::tabulate(0.0, 1.0, nodes, u).map_err(err)?).map_err(err)?;
    let small = DrivingFunction::sampled(
        Sampled::tabulate(0.0, 0.5, nodes, |t| u(2.0 * t) / 2f64.sqrt()).map_err(err)?,
    )
    .map_err(err)?;
    let big_seq = discretize(&big, 1.0, &cfg).map_err(err)?;
    let small_seq = discretize(&small, 0.5, &cfg).map_err(err)?;
    let scale = (1..=100)
        .map(|k| {
            let t = 0.005 * k as f64;
            (small_seq.curve_at(t) - big_seq.curve_at(2.0 * t) / 2f64.sqrt()).norm()
        })
        .fold(0.0, f64::max);
    let tol = 5.0 * cfg.trace_tolerance();
    notes.push(check(&mut fails, scale <= tol, format!("scaling {scale:.1e}")));

    let a = 0.75;
    let g = DrivingFunction::sqrt_forward(2.0, 1.0).map_err(err)?;
    let base = trace(&g, 1.0, &cfg).map_err(err)?;
    let moved = trace(&g.clone().with_offset(a).map_err(err)?, 1.0, &cfg).map_err(err)?;
    let shift = if base.len() == moved.len() {
        base.zs().zip(moved.zs()).map(|(z, w)| (z + a - w).norm()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    notes.push(check(&mut fails, shift <= 1e-12, format!("translation {shift:.1e}")));
    verdict(fails, notes)
}

fn regularity() -> Outcome {
    let (mut fails, mut notes) = (Vec::new(), Vec::new());
    let f = DrivingFunction::sqrt_forward(3.9, 1.0).map_err(err)?;
    let mut irregular = Vec::new();
    for k in 1..100 {
        let t0 = k as f64 / 100.0;
        let v = classify_regularity(&f, t0, &Ladder::classification(t0).map_err(err)?).map_err(err)?;
        if v.class != Regularity::Regular {
            irregular.push(t0);
        }
    }
    let summary = if irregular.is_empty() {
        "sqrt c=3.9 regular at all 99 points".to_string()
    } else {
        format!("sqrt c=3.9 not regular at {irregular:?}")
    };
    notes.push(check(&mut fails, irregular.is_empty(), summary));

    let back = DrivingFunction::sqrt_backward(5.0, 1.0).map_err(err)?;
    let v = classify_regularity(&back, 1.0, &Ladder::classification(1.0).map_err(err)?).map_err(err)?;
    notes.push(check(
        &mut fails,
        v.exceeds_threshold_all_scales,
        format!("backsqrt above 4 at all scales: {}", v.exceeds_threshold_all_scales),
    ));

    for c in [5.0, 10.0] {
        let z = DrivingFunction::theorem14(c, DEFAULT_DEPTH).map_err(err)?;
        let v = classify_regularity(&z, 1.0, &Ladder::classification(1.0).map_err(err)?).map_err(err)?;
        let ok = v.class == Regularity::Irregular && v.liminf_proxy < 4.0 && 4.0 <= v.limsup_proxy;
        notes.push(check(
            &mut fails,
            ok,
            format!("zigzag C = {c}: {:?} ({:.2}, {:.2})", v.class, v.liminf_proxy, v.limsup_proxy),
        ));
    }
    verdict(fails, notes)
}

fn main() -> ExitCode {
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria = [
        Criterion { id: "1 vertical slit", limit: Some(Duration::from_secs(1)), run: vertical_slit },
        Criterion { id: "2 ray angles", limit: Some(Duration::from_secs(10)), run: ray_angles },
        Criterion { id: "3 hitting angle", limit: Some(Duration::from_secs(30)), run: hitting_angle_oracle },
        Criterion { id: "4 welding symmetry", limit: Some(Duration::from_secs(5)), run: welding_symmetry },
        Criterion { id: "5 zigzag C = 1", limit: minutes(2), run: || zigzag(1.0) },
        Criterion { id: "5 zigzag C = 5", limit: minutes(2), run: || zigzag(5.0) },
        Criterion { id: "5 zigzag C = 10", limit: minutes(2), run: || zigzag(10.0) },
        Criterion { id: "6 self-similarity", limit: None, run: self_similarity },
        Criterion { id: "7 invariants", limit: None, run: invariants },
        Criterion { id: "8 regularity", limit: None, run: regularity },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let slow = c.limit.is_some_and(|l| elapsed > l);
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && !slow, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" / {:.0?}", l));
        let timing = format!("{:.2?}{limit}{}", elapsed, if slow { " exceeded" } else { "" });
        println!("{} criterion {}: {detail} [{timing}]", if pass { "PASS" } else { "FAIL" }, c.id);
        if !pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
