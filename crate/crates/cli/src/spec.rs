//! Driver arguments: inline (`sqrt:c=2`), `file:samples.csv`, or a JSON
//! descriptor path.

use std::collections::BTreeMap;
use std::path::Path;

use loewner::driving::DriverDescriptor;
use loewner::{DriverKind, DrivingFunction};
use serde_json::Value;

use crate::CliError;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn kind_name(alias: &str) -> Option<&'static str> {
    Some(match alias {
        "const" | "constant" => "constant",
        "sqrt" | "sqrt_forward" => "sqrt_forward",
        "backsqrt" | "sqrt_backward" => "sqrt_backward",
        "theorem14" => "theorem14",
        "example32" | "composite_example" => "composite_example",
        _ => return None,
    })
}

/// Parse `kind:key=value,key=value`. `horizon` supplies `T` for kinds that
/// accept one when the argument itself does not.
pub fn parse_inline(spec: &str, horizon: Option<f64>) -> Result<DriverDescriptor, CliError> {
    let (alias, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let kind = kind_name(alias).ok_or_else(|| CliError::Invalid(format!("unknown driver kind `{alias}`")))?;
    let mut params = BTreeMap::new();
    let mut own_horizon = None;
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("expected key=value, got `{item}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("`{key}` must be a number, got `{value}`")))?;
        match key.trim() {
            "T" => own_horizon = Some(value),
            k => {
                params.insert(k.to_string(), Value::from(value));
            }
        }
    }
    let adjustable = matches!(kind, "constant" | "sqrt_forward" | "sqrt_backward");
    let horizon = own_horizon.or(if adjustable { horizon } else { None });
    Ok(DriverDescriptor { kind: kind.to_string(), params, horizon })
}

/// Build the driver named by `spec`.
pub fn load(spec: &str, horizon: Option<f64>) -> Result<DrivingFunction, CliError> {
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(DrivingFunction::from_csv(&read(path)?)?);
    }
    if spec.ends_with(".json") || (!spec.contains(':') && Path::new(spec).is_file()) {
        return Ok(DriverDescriptor::from_json(&read(spec)?)?.build()?);
    }
    Ok(parse_inline(spec, horizon)?.build()?)
}

/// Where tracing a self-similar driver stops: the grid depth caps the
/// resolved levels, so `T = 1` becomes `1 - 2^-depth`.
pub fn trace_horizon(f: &DrivingFunction, requested: Option<f64>) -> f64 {
    let horizon = requested.unwrap_or(f.horizon());
    let depth = match f.kind() {
        DriverKind::Theorem14 { depth, .. }
        | DriverKind::CompositeExample { depth, .. }
        | DriverKind::DSimilar { depth, .. } => *depth,
        _ => return horizon,
    };
    if horizon >= 1.0 {
        1.0 - (-(depth as f64)).exp2()
    } else {
        horizon
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_specs() {
        let f = load("sqrt:c=2", None).unwrap();
        assert_eq!(f.at(0.25), 1.0);
        let f = load("theorem14:C=5", Some(0.5)).unwrap();
        assert_eq!(f.horizon(), 1.0);
        assert!((f.at(0.25) - 5.0 * 0.75f64.sqrt()).abs() < 1e-12);
        let f = load("backsqrt:c=5,T=2", Some(1.0)).unwrap();
        assert_eq!(f.horizon(), 2.0);
        let f = load("const:u=0.5,a=1", Some(3.0)).unwrap();
        assert_eq!((f.horizon(), f.at(1.0)), (3.0, 1.5));
    }

    #[test]
    fn bad_specs() {
        for bad in ["nope:c=1", "sqrt:c", "sqrt:c=x", "sqrt", "theorem14:C=-1", "file:/no/such.csv"] {
            assert!(load(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn singular_horizon_is_clamped() {
        let f = load("theorem14:C=5,depth=10", None).unwrap();
        assert_eq!(trace_horizon(&f, None), 1.0 - 2f64.powi(-10));
        assert_eq!(trace_horizon(&f, Some(0.999)), 0.999);
        let g = load("sqrt:c=1", None).unwrap();
        assert_eq!(trace_horizon(&g, None), 1.0);
    }
}
