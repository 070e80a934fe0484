use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{DriverKind, DrivingFunction, Sampled};
use crate::error::{Error, Result};
use crate::table;

/// JSON form of a driver: `{"kind": "...", "params": {...}, "T": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverDescriptor {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

fn pairs_value(s: &Sampled) -> Value {
    Value::Array(
        s.times()
            .iter()
            .zip(s.values())
            .map(|(t, u)| Value::from(vec![*t, *u]))
            .collect(),
    )
}

fn pairs_from(value: &Value, name: &str) -> Result<Sampled> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Format(format!("`{name}` must be an array of [t, u] pairs")))?;
    let mut pairs = Vec::with_capacity(rows.len());
    for row in rows {
        match row.as_array().map(|r| r.as_slice()) {
            Some([t, u]) => match (t.as_f64(), u.as_f64()) {
                (Some(t), Some(u)) => pairs.push((t, u)),
                _ => return Err(Error::Format(format!("non-numeric entry in `{name}`"))),
            },
            _ => return Err(Error::Format(format!("`{name}` entries must be [t, u] pairs"))),
        }
    }
    Sampled::from_pairs(pairs)
}

impl DriverDescriptor {
    fn number(&self, key: &str) -> Result<Option<f64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| Error::Format(format!("parameter `{key}` must be a number"))),
        }
    }

    fn required(&self, key: &str) -> Result<f64> {
        self.number(key)?
            .ok_or_else(|| Error::Format(format!("kind `{}` needs parameter `{key}`", self.kind)))
    }

    fn depth(&self) -> Result<u32> {
        match self.number("depth")? {
            None => Ok(super::DEFAULT_DEPTH),
            Some(d) if d >= 1.0 && d.fract() == 0.0 && d <= 60.0 => Ok(d as u32),
            Some(d) => Err(Error::Parameter(format!("depth must be an integer in [1, 60], got {d}"))),
        }
    }

    pub fn build(&self) -> Result<DrivingFunction> {
        let horizon = self.horizon.unwrap_or(1.0);
        let fixed_unit = |name: &str| -> Result<()> {
            match self.horizon {
                Some(t) if t != 1.0 => {
                    Err(Error::Parameter(format!("kind `{name}` lives on [0, 1], got T = {t}")))
                }
                _ => Ok(()),
            }
        };
        let f = match self.kind.as_str() {
            "constant" => DrivingFunction::constant(self.number("u")?.unwrap_or(0.0), horizon)?,
            "sqrt_forward" => DrivingFunction::sqrt_forward(self.required("c")?, horizon)?,
            "sqrt_backward" => DrivingFunction::sqrt_backward(self.required("c")?, horizon)?,
            "theorem14" => {
                fixed_unit("theorem14")?;
                DrivingFunction::theorem14(self.required("C")?, self.depth()?)?
            }
            "composite_example" => {
                fixed_unit("composite_example")?;
                let base = DrivingFunction::theorem14(self.required("C")?, self.depth()?)?;
                DrivingFunction::example32(&base)?
            }
            "d_similar" => {
                fixed_unit("d_similar")?;
                let piece = self
                    .params
                    .get("piece")
                    .ok_or_else(|| Error::Format("kind `d_similar` needs `piece`".into()))?;
                DrivingFunction::d_similar(self.required("d")?, pairs_from(piece, "piece")?)?
                    .with_depth(self.depth()?)?
            }
            "sampled" => {
                let samples = self
                    .params
                    .get("samples")
                    .ok_or_else(|| Error::Format("kind `sampled` needs `samples`".into()))?;
                let f = DrivingFunction::sampled(pairs_from(samples, "samples")?)?;
                if let Some(t) = self.horizon {
                    if t != f.horizon() {
                        return Err(Error::Parameter(format!(
                            "T = {t} does not match the last sample time {}",
                            f.horizon()
                        )));
                    }
                }
                f
            }
            other => return Err(Error::Format(format!("unknown driver kind `{other}`"))),
        };
        f.with_offset(self.number("a")?.unwrap_or(0.0))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }
}

impl DrivingFunction {
    pub fn descriptor(&self) -> DriverDescriptor {
        let mut params = BTreeMap::new();
        let kind = match &self.kind {
            DriverKind::Constant { u } => {
                params.insert("u".into(), Value::from(*u));
                "constant"
            }
            DriverKind::SqrtForward { c } => {
                params.insert("c".into(), Value::from(*c));
                "sqrt_forward"
            }
            DriverKind::SqrtBackward { c } => {
                params.insert("c".into(), Value::from(*c));
                "sqrt_backward"
            }
            DriverKind::Theorem14 { c, depth } => {
                params.insert("C".into(), Value::from(*c));
                params.insert("depth".into(), Value::from(*depth));
                "theorem14"
            }
            DriverKind::CompositeExample { c, depth } => {
                params.insert("C".into(), Value::from(*c));
                params.insert("depth".into(), Value::from(*depth));
                "composite_example"
            }
            DriverKind::DSimilar { d, piece, depth } => {
                params.insert("d".into(), Value::from(*d));
                params.insert("depth".into(), Value::from(*depth));
                params.insert("piece".into(), pairs_value(piece));
                "d_similar"
            }
            DriverKind::Sampled(s) => {
                params.insert("samples".into(), pairs_value(s));
                "sampled"
            }
        };
        if self.offset != 0.0 {
            params.insert("a".into(), Value::from(self.offset));
        }
        DriverDescriptor { kind: kind.into(), params, horizon: Some(self.horizon) }
    }

    /// Parse a sampled driver from CSV with header `t,u`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = table::read(text, &["t", "u"])?;
        Self::sampled(Sampled::from_pairs(rows.iter().map(|r| (r[0], r[1])))?)
    }

    /// Write a sampled driver (or a tabulation of any driver on `n` uniform
    /// nodes) as CSV with header `t,u`.
    pub fn to_csv(&self, n: usize) -> String {
        let rows: Vec<[f64; 2]> = match &self.kind {
            DriverKind::Sampled(s) => s
                .times()
                .iter()
                .zip(s.values())
                .map(|(&t, &u)| [t, u + self.offset])
                .collect(),
            _ => {
                let n = n.max(2);
                (0..n)
                    .map(|i| {
                        let t = if i + 1 == n {
                            self.horizon
                        } else {
                            self.horizon * i as f64 / (n - 1) as f64
                        };
                        [t, self.at(t)]
                    })
                    .collect()
            }
        };
        table::write(&["t", "u"], rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_roundtrip_for_every_kind() {
        let zig = DrivingFunction::theorem14(5.0, 12).unwrap();
        let piece = Sampled::from_pairs([(0.25, 0.5), (1.0, 1.0)]).unwrap();
        let drivers = vec![
            DrivingFunction::constant(0.5, 2.0).unwrap(),
            DrivingFunction::sqrt_forward(2.0, 1.0).unwrap().with_offset(0.25).unwrap(),
            DrivingFunction::sqrt_backward(5.0, 1.0).unwrap(),
            zig.clone(),
            DrivingFunction::example32(&zig).unwrap(),
            DrivingFunction::d_similar(0.5, piece).unwrap(),
            DrivingFunction::sampled(Sampled::tabulate(0.0, 1.0, 5, |t| t * t).unwrap()).unwrap(),
        ];
        for f in drivers {
            let text = f.descriptor().to_json();
            let back = DriverDescriptor::from_json(&text).unwrap().build().unwrap();
            assert_eq!(back, f, "{text}");
        }
    }

    #[test]
    fn descriptor_errors() {
        let bad = DriverDescriptor::from_json(r#"{"kind": "theorem14", "params": {}}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::Format(_))));
        let bad = DriverDescriptor::from_json(r#"{"kind": "spiral", "params": {}}"#).unwrap();
        assert!(bad.build().is_err());
        let bad =
            DriverDescriptor::from_json(r#"{"kind": "theorem14", "params": {"C": 5}, "T": 2}"#)
                .unwrap();
        assert!(matches!(bad.build(), Err(Error::Parameter(_))));
    }

    #[test]
    fn csv_roundtrip_is_exact() {
        let s = Sampled::tabulate(0.0, 0.75, 17, |t| (3.0 * t).sin()).unwrap();
        let f = DrivingFunction::sampled(s).unwrap();
        let text = f.to_csv(0);
        assert!(text.starts_with("t,u\n"));
        assert_eq!(DrivingFunction::from_csv(&text).unwrap(), f);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(DrivingFunction::from_csv("x,y\n0,0\n1,1\n").is_err());
        assert!(DrivingFunction::from_csv("t,u\n0,0\n0,1\n").is_err());
        assert!(DrivingFunction::from_csv("t,u\n0,0\n1,abc\n").is_err());
        assert!(DrivingFunction::from_csv("t,u\n0.5,0\n1,1\n").is_err());
    }
}
