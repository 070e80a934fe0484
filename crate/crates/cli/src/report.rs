//! The combined diagnostics report.

use loewner::driving::{DriverDescriptor, HolderReport};
use loewner::flow::HcapEstimate;
use loewner::geometry::{AngleFit, TipEstimate, TurningReport};
use loewner::welding::WeldCheckReport;
use loewner::{Complex64, SolverConfig};
use serde::Serialize;

/// Either a computed section or the error that prevented it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Section<T> {
    Ok(T),
    Error(String),
    Skipped(String),
}

impl<T> Section<T> {
    pub fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Error(e.to_string()),
        }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, Section::Ok(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSummary {
    pub horizon: f64,
    pub steps: usize,
    pub min_step: f64,
    pub points: usize,
    pub trace_tolerance: f64,
    pub base: Complex64,
    pub tip: Complex64,
    pub cone_angle: f64,
    pub ray_fit: Option<AngleFit>,
    pub hcap: HcapEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderSection {
    /// Grid used for the pairwise norm.
    pub grid_size: usize,
    pub report: HolderReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub version: String,
    pub driver: DriverDescriptor,
    pub driver_id: String,
    pub config: SolverConfig,
    pub holder: Section<HolderSection>,
    pub trace: Section<TraceSummary>,
    pub weld: Section<WeldCheckReport>,
    pub turning: Section<TurningReport>,
    pub tip: Section<TipEstimate>,
}

impl DiagnosticsReport {
    pub fn any_ok(&self) -> bool {
        self.holder.is_ok() || self.trace.is_ok() || self.weld.is_ok() || self.turning.is_ok() || self.tip.is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
