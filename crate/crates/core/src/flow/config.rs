use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of elementary steps in one sequence.
pub const MAX_STEPS: usize = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Refinement {
    /// Base grid (plus driver kinks) only.
    Uniform,
    /// Halve steps until `|ΔU| ≤ κ √Δt` on every step.
    DyadicAdaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Base time step `Δt`.
    pub base_step: f64,
    pub refinement: Refinement,
    /// Cap `κ` on `|ΔU| / √Δt` per step under adaptive refinement.
    pub kappa: f64,
    /// Height `y₀` above the driver at which trace points are seeded;
    /// zero uses the exact slit tip.
    pub tip_offset: f64,
    /// Radius `R` of the far-field circle for capacity estimates.
    pub far_field_radius: f64,
    /// Maximum number of halvings of one base step. Steps at this depth are
    /// accepted even if the `κ` cap still fails (e.g. `c√t` at `t = 0`).
    pub max_refine_depth: u32,
    /// Maximum number of points emitted by a trace.
    pub max_points: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            base_step: 1e-4,
            refinement: Refinement::DyadicAdaptive,
            kappa: 0.05,
            tip_offset: 0.0,
            far_field_radius: 100.0,
            max_refine_depth: 30,
            max_points: 2000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be positive, got {v}")))
            }
        };
        positive("base_step", self.base_step)?;
        positive("kappa", self.kappa)?;
        positive("far_field_radius", self.far_field_radius)?;
        if !(self.tip_offset.is_finite() && self.tip_offset >= 0.0) {
            return Err(Error::Parameter(format!(
                "tip_offset must be nonnegative, got {}",
                self.tip_offset
            )));
        }
        if self.max_refine_depth > 50 {
            return Err(Error::Parameter("max_refine_depth must be at most 50".into()));
        }
        if self.max_points < 2 {
            return Err(Error::Parameter("max_points must be at least 2".into()));
        }
        Ok(())
    }

    /// Spatial tolerance of a traced point: the tip displacement caused by a
    /// driver increment of `κ√Δt` over one base step, `2κ√Δt`.
    pub fn trace_tolerance(&self) -> f64 {
        2.0 * self.kappa * self.base_step.sqrt()
    }

    /// The next level of a refinement sweep: every adaptive step halves.
    pub fn refined(&self) -> Self {
        Self {
            base_step: 0.5 * self.base_step,
            kappa: self.kappa * std::f64::consts::FRAC_1_SQRT_2,
            ..self.clone()
        }
    }

    pub fn with_base_step(mut self, dt: f64) -> Self {
        self.base_step = dt;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_refinement(mut self, refinement: Refinement) -> Self {
        self.refinement = refinement;
        self
    }

    pub fn with_max_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }
}
