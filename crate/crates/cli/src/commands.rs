use std::path::Path;

use loewner::driving::{holder_report, DriverDescriptor};
use loewner::flow::{discretize, discretize_with_nodes, hcap_estimate, trace_sequence};
use loewner::geometry::{bounded_turning, cone_angle, segment_angle_fit, tip_fixed_point, DiameterMode};
use loewner::welding::{
    default_taus, is_welded_on, quasisymmetry_estimate, welding_map_on, QuasisymmetryEstimate, Verdict,
    WeldCheckReport, DEFAULT_OFFSETS,
};
use loewner::{DriverKind, DrivingFunction, TracedCurve};
use serde::Serialize;

use crate::args::{Cli, Command, Common};
use crate::report::{DiagnosticsReport, HolderSection, Section, TraceSummary};
use crate::settings::{resolve, FileSettings, Settings};
use crate::{exit, spec, svg, CliError};

/// Grid size for the pairwise Hölder norm in reports.
const HOLDER_GRID: usize = 1000;

pub fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    let file = FileSettings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Trace { common, out } => {
            let (f, settings) = setup(&file, common, None)?;
            trace(&f, &settings, out)
        }
        Command::Weld { common, pairs, out, report } => {
            let (f, settings) = setup(&file, common, *pairs)?;
            weld(&f, &settings, out.as_deref(), report.as_deref())
        }
        Command::Diagnose { common, out } => {
            let (f, settings) = setup(&file, common, None)?;
            let report = diagnose(&f, &settings);
            emit(out.as_deref(), &report.to_json())?;
            Ok(if report.any_ok() { exit::OK } else { exit::RESOLUTION })
        }
    }
}

fn setup(file: &FileSettings, common: &Common, pairs: Option<usize>) -> Result<(DrivingFunction, Settings), CliError> {
    let settings = resolve(file, common, pairs)?;
    let f = spec::load(&common.driver, settings.horizon)?;
    if let Some(t) = settings.horizon {
        if !(t > 0.0 && t <= f.horizon()) {
            return Err(CliError::Invalid(format!("T = {t} must lie in (0, {}]", f.horizon())));
        }
    }
    Ok((f, settings))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Write to `path`, or stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn traced(f: &DrivingFunction, settings: &Settings) -> Result<(TracedCurve, loewner::MapSequence), CliError> {
    let horizon = spec::trace_horizon(f, settings.horizon);
    let seq = discretize(f, horizon, &settings.solver)?;
    Ok((trace_sequence(&seq, &settings.solver, f.id()), seq))
}

fn trace(f: &DrivingFunction, settings: &Settings, out: &[std::path::PathBuf]) -> Result<u8, CliError> {
    let (curve, _) = traced(f, settings)?;
    if out.is_empty() {
        emit(None, &curve.to_csv())?;
    }
    for path in out {
        let is_svg = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
        write(path, &if is_svg { svg::render(&curve) } else { curve.to_csv() })?;
    }
    let tip = curve.tip();
    eprintln!(
        "{}: {} steps, {} points, tip {:.6}{:+.6}i at t = {}",
        curve.driver_id,
        curve.steps,
        curve.len(),
        tip.re,
        tip.im,
        curve.horizon
    );
    Ok(exit::OK)
}

#[derive(Debug, Serialize)]
struct WeldReport {
    version: &'static str,
    driver: DriverDescriptor,
    driver_id: String,
    check: WeldCheckReport,
    pairs: usize,
    domain: (f64, f64),
    failures: Vec<f64>,
    quasisymmetry: Section<QuasisymmetryEstimate>,
}

fn weld(f: &DrivingFunction, settings: &Settings, out: Option<&Path>, report: Option<&Path>) -> Result<u8, CliError> {
    let horizon = settings.horizon.unwrap_or(f.horizon());
    let taus = default_taus(horizon);
    let seq = discretize_with_nodes(f, horizon, &settings.solver, &taus)?;
    let check = is_welded_on(&seq, f, &taus, &DEFAULT_OFFSETS, &settings.solver)?;
    let map = welding_map_on(&seq, f.at(horizon), settings.pairs)?;
    emit(out, &map.to_csv())?;
    let verdict = check.verdict;
    eprintln!(
        "{}: {:?}, gap floor {:.3e} (epsilon_min {:.1e}), {} of {} pairs",
        f.id(),
        verdict,
        check.gap_floor,
        check.epsilon_min,
        map.pairs.len(),
        settings.pairs
    );
    if let Some(path) = report {
        let r = WeldReport {
            version: env!("CARGO_PKG_VERSION"),
            driver: f.descriptor(),
            driver_id: f.id(),
            pairs: map.pairs.len(),
            domain: map.domain,
            failures: map.failures.clone(),
            quasisymmetry: Section::from_result(quasisymmetry_estimate(&map)),
            check,
        };
        write(path, &serde_json::to_string_pretty(&r).expect("report serializes"))?;
    }
    Ok(match verdict {
        Verdict::Welded => exit::OK,
        Verdict::NotWelded => exit::NOT_WELDED,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
    })
}

pub fn diagnose(f: &DrivingFunction, settings: &Settings) -> DiagnosticsReport {
    let cfg = &settings.solver;
    let horizon = f.horizon();
    let times = [0.25 * horizon, 0.5 * horizon, 0.75 * horizon, horizon];
    let holder = Section::from_result(
        holder_report(f, HOLDER_GRID, &times).map(|report| HolderSection { grid_size: HOLDER_GRID, report }),
    );
    let ray = matches!(f.kind(), DriverKind::SqrtForward { .. } | DriverKind::Constant { .. });
    let (trace, turning) = match traced(f, settings) {
        Ok((curve, seq)) => (
            Section::Ok(TraceSummary {
                horizon: curve.horizon,
                steps: curve.steps,
                min_step: curve.min_step,
                points: curve.len(),
                trace_tolerance: curve.trace_tolerance(),
                base: curve.base(),
                tip: curve.tip(),
                cone_angle: cone_angle(&curve),
                ray_fit: if ray { segment_angle_fit(&curve).ok() } else { None },
                hcap: hcap_estimate(&seq, cfg),
            }),
            Section::from_result(bounded_turning(&curve, DiameterMode::EndpointApprox)),
        ),
        Err(e) => (Section::Error(e.to_string()), Section::Skipped("no trace".into())),
    };
    let weld_horizon = settings.horizon.unwrap_or(horizon);
    let taus = default_taus(weld_horizon);
    let weld = Section::from_result(
        discretize_with_nodes(f, weld_horizon, cfg, &taus)
            .and_then(|seq| is_welded_on(&seq, f, &taus, &DEFAULT_OFFSETS, cfg)),
    );
    let tip = if f.self_similarity().is_some() {
        Section::from_result(tip_fixed_point(f, cfg))
    } else {
        Section::Skipped("driver is not self-similar".into())
    };
    DiagnosticsReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        driver: f.descriptor(),
        driver_id: f.id(),
        config: cfg.clone(),
        holder,
        trace,
        weld,
        turning,
        tip,
    }
}
