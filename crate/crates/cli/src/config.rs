//! Flag/config-file merging. A config file is a flat JSON object whose keys
//! are the subcommand's long flags in snake case; flags win over the file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use dimer_core::{ModelParams, Range1D};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct ModelArgs {
    /// Exchange coupling J (> 0).
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// XXZ exchange anisotropy.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Single-ion anisotropy D of the spin-1 ion.
    #[arg(long = "d-anis", allow_negative_numbers = true)]
    pub d_anis: Option<f64>,
    /// Landé factor of the spin-1/2 ion.
    #[arg(long)]
    pub g1: Option<f64>,
    /// Landé factor of the spin-1 ion.
    #[arg(long)]
    pub g2: Option<f64>,
    /// Polarization scale.
    #[arg(long)]
    pub mu: Option<f64>,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams> {
        let d = ModelParams::default();
        let p = ModelParams {
            j: self.j.unwrap_or(d.j),
            delta: self.delta.unwrap_or(d.delta),
            d: self.d_anis.unwrap_or(d.d),
            g1: self.g1.unwrap_or(d.g1),
            g2: self.g2.unwrap_or(d.g2),
            mu: self.mu.unwrap_or(d.mu),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }
}

pub fn range(spec: &Option<String>, default: &str) -> Result<Range1D> {
    let s = spec.as_deref().unwrap_or(default);
    Ok(s.parse::<Range1D>()?)
}

/// Fills unset flags of `flags` from the JSON object at `path`.
pub fn merge<T: Serialize + DeserializeOwned>(flags: &T, path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(serde_json::from_value(serde_json::to_value(flags)?)?);
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let file: Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing config {}", path.display()))?;
    merge_value(flags, file)
}

fn merge_value<T: Serialize + DeserializeOwned>(flags: &T, file: Value) -> Result<T> {
    let Value::Object(file) = file else {
        bail!("config file must hold a JSON object");
    };
    let Value::Object(over) = serde_json::to_value(flags)? else {
        bail!("internal: flags do not serialize to an object");
    };
    let unknown: Vec<&String> = file.keys().filter(|k| !over.contains_key(*k)).collect();
    if !unknown.is_empty() {
        bail!("unknown config keys for this subcommand: {unknown:?}");
    }
    let mut merged = Map::new();
    for (k, v) in over {
        let v = if v.is_null() { file.get(&k).cloned().unwrap_or(Value::Null) } else { v };
        merged.insert(k, v);
    }
    serde_json::from_value(Value::Object(merged)).context("invalid value in config file")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[derive(Debug, Default, Serialize, Deserialize, PartialEq)]
    struct Demo {
        #[serde(flatten)]
        model: ModelArgs,
        b: Option<f64>,
        b_range: Option<String>,
    }

    #[test]
    fn flags_override_file() {
        let flags = Demo {
            model: ModelArgs {
                g2: Some(0.8),
                ..Default::default()
            },
            ..Default::default()
        };
        let file = json!({"g2": 3.0, "d_anis": -1.0, "b_range": "0:2:5"});
        let m = merge_value(&flags, file).unwrap();
        assert_eq!(m.model.g2, Some(0.8));
        assert_eq!(m.model.d_anis, Some(-1.0));
        assert_eq!(m.b_range.as_deref(), Some("0:2:5"));
        assert_eq!(m.b, None);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(merge_value(&Demo::default(), json!({"bogus": 1})).is_err());
        assert!(merge_value(&Demo::default(), json!([1, 2])).is_err());
        assert!(merge_value(&Demo::default(), json!({"b": "x"})).is_err());
    }

    #[test]
    fn defaults_are_validated() {
        let bad = ModelArgs {
            j: Some(-1.0),
            ..Default::default()
        };
        assert!(bad.params().is_err());
        assert_eq!(ModelArgs::default().params().unwrap(), ModelParams::default());
    }
}
