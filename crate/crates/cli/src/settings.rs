//! Settings precedence: command-line flags, then the TOML file, then
//! built-in defaults.
//!
//! ```toml
//! horizon = 1.0
//! pairs = 20
//!
//! [solver]
//! base_step = 1e-4
//! refinement = "dyadic-adaptive"
//! kappa = 0.05
//! tip_offset = 0.0
//! far_field_radius = 100.0
//! max_refine_depth = 30
//! max_points = 2000
//! ```

use std::path::{Path, PathBuf};

use loewner::{Refinement, SolverConfig};
use serde::Deserialize;

use crate::args::{Common, RefinementArg};
use crate::CliError;

pub const DEFAULT_FILE: &str = "loewner.toml";
pub const DEFAULT_PAIRS: usize = 20;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSettings {
    pub horizon: Option<f64>,
    pub pairs: Option<usize>,
    #[serde(default)]
    pub solver: Option<SolverConfig>,
}

impl FileSettings {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Invalid(format!("settings: {e}")))
    }

    /// Read `explicit`, or `./loewner.toml` if it exists, or nothing.
    pub fn load(explicit: Option<&Path>) -> Result<Self, CliError> {
        let path: PathBuf = match explicit {
            Some(p) => p.to_path_buf(),
            None if Path::new(DEFAULT_FILE).is_file() => PathBuf::from(DEFAULT_FILE),
            None => return Ok(Self::default()),
        };
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub horizon: Option<f64>,
    pub pairs: usize,
    pub solver: SolverConfig,
}

pub fn resolve(file: &FileSettings, flags: &Common, pairs: Option<usize>) -> Result<Settings, CliError> {
    let mut solver = file.solver.clone().unwrap_or_default();
    if let Some(dt) = flags.dt {
        solver.base_step = dt;
    }
    if let Some(k) = flags.kappa {
        solver.kappa = k;
    }
    if let Some(r) = flags.refinement {
        solver.refinement = match r {
            RefinementArg::Uniform => Refinement::Uniform,
            RefinementArg::DyadicAdaptive => Refinement::DyadicAdaptive,
        };
    }
    if let Some(y) = flags.tip_offset {
        solver.tip_offset = y;
    }
    if let Some(r) = flags.radius {
        solver.far_field_radius = r;
    }
    if let Some(n) = flags.points {
        solver.max_points = n;
    }
    solver.validate()?;
    let pairs = pairs.or(file.pairs).unwrap_or(DEFAULT_PAIRS);
    if pairs == 0 {
        return Err(CliError::Invalid("pairs must be positive".into()));
    }
    Ok(Settings { horizon: flags.horizon.or(file.horizon), pairs, solver })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Common {
        Common {
            driver: "const:u=0".into(),
            horizon: None,
            dt: None,
            kappa: None,
            refinement: None,
            tip_offset: None,
            radius: None,
            points: None,
        }
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let file = FileSettings::parse("pairs = 7\n[solver]\nkappa = 0.1\nbase_step = 1e-3\n").unwrap();
        let mut f = flags();
        f.dt = Some(2e-3);
        let s = resolve(&file, &f, None).unwrap();
        assert_eq!(s.solver.base_step, 2e-3);
        assert_eq!(s.solver.kappa, 0.1);
        assert_eq!(s.solver.far_field_radius, SolverConfig::default().far_field_radius);
        assert_eq!(s.pairs, 7);
        assert_eq!(resolve(&file, &f, Some(3)).unwrap().pairs, 3);
        let s = resolve(&FileSettings::default(), &flags(), None).unwrap();
        assert_eq!(s.solver, SolverConfig::default());
        assert_eq!(s.pairs, DEFAULT_PAIRS);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        assert!(FileSettings::parse("colour = 1").is_err());
        assert!(FileSettings::parse("[solver]\nkapa = 1").is_err());
        let mut f = flags();
        f.kappa = Some(-1.0);
        assert!(resolve(&FileSettings::default(), &f, None).is_err());
    }
}
