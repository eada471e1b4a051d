//! Experiment config files (TOML or JSON).
//!
//! ```toml
//! layout_kind = "cantor"     # cantor | homogeneous | two_scatter
//! generation = 7
//! theta1 = "pi/8"            # radians, or a multiple of pi as a string
//! theta2 = 0.7853981633974483
//! steps = 1093               # default L
//! record_every = 1
//! snapshot_times = [1093]    # default [steps]
//! outputs = ["series", "snapshots", "transition"]
//! two_scatter_swap = false
//!
//! [sweep]
//! parameter = "theta1"
//! grid = 64                  # or: values = [0.1, "pi/4", ...]
//! ```

use std::path::Path;

use qwalk_core::{ExperimentConfig, LayoutChoice, OutputSink, Sweep, SweepParameter};
use serde::Deserialize;

use crate::angle::parse_angle;
use crate::error::{AppError, Result};

/// Default number of uniform intervals for a sweep over `[0, pi/2]`.
pub const DEFAULT_GRID: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Radians(f64),
    Expr(String),
}

impl AngleValue {
    pub fn radians(&self) -> Result<f64> {
        match self {
            AngleValue::Radians(v) => Ok(*v),
            AngleValue::Expr(s) => parse_angle(s),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKindFile {
    Cantor,
    Homogeneous,
    TwoScatter,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SinkFile {
    Series,
    Snapshots,
    Sweep,
    Transition,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub parameter: String,
    #[serde(default)]
    pub values: Option<Vec<AngleValue>>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub from: Option<AngleValue>,
    #[serde(default)]
    pub to: Option<AngleValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub layout_kind: LayoutKindFile,
    #[serde(default)]
    pub generation: Option<u32>,
    #[serde(default, rename = "L", alias = "half_width")]
    pub half_width: Option<usize>,
    pub theta1: Option<AngleValue>,
    pub theta2: AngleValue,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub record_every: Option<usize>,
    #[serde(default)]
    pub snapshot_times: Option<Vec<usize>>,
    #[serde(default)]
    pub sweep: Option<SweepFile>,
    #[serde(default)]
    pub outputs: Option<Vec<SinkFile>>,
    #[serde(default)]
    pub two_scatter_swap: bool,
}

impl ConfigFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| AppError::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AppError::Config(e.to_string()))
    }

    /// Picks the format from the extension; without a known extension JSON
    /// is tried first, then TOML.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Self::from_toml(&text),
            Some("json") => Self::from_json(&text),
            _ => Self::from_json(&text).or_else(|_| Self::from_toml(&text)),
        }
    }

    /// Converts to the core config and validates it.
    pub fn into_config(self) -> Result<ExperimentConfig> {
        let theta2 = self.theta2.radians()?;
        // a homogeneous chain has one angle; theta1 mirrors theta2 unless given
        let theta1 = match &self.theta1 {
            Some(a) => a.radians()?,
            None if self.layout_kind == LayoutKindFile::Homogeneous => theta2,
            None => return Err(AppError::Config("theta1 is required".into())),
        };
        let sweep = self.sweep.map(SweepFile::into_sweep).transpose()?;
        let outputs = match self.outputs {
            Some(list) => list.into_iter().map(SinkFile::into_sink).collect(),
            None => {
                let mut out = vec![OutputSink::Series, OutputSink::Snapshots];
                if matches!(&sweep, Some(s) if s.parameter == SweepParameter::Theta1) {
                    out.push(OutputSink::Sweep);
                }
                out
            }
        };
        let config = ExperimentConfig {
            layout: match self.layout_kind {
                LayoutKindFile::Cantor => LayoutChoice::Cantor,
                LayoutKindFile::Homogeneous => LayoutChoice::Homogeneous,
                LayoutKindFile::TwoScatter => LayoutChoice::TwoScatter,
            },
            generation: self.generation,
            half_width: self.half_width,
            theta1,
            theta2,
            steps: self.steps,
            record_every: self.record_every.unwrap_or(1),
            snapshot_times: self.snapshot_times,
            sweep,
            outputs,
            two_scatter_swap: self.two_scatter_swap,
        };
        config.validate()?;
        Ok(config)
    }
}

impl SweepFile {
    fn into_sweep(self) -> Result<Sweep> {
        let parameter = match self.parameter.as_str() {
            "theta1" => SweepParameter::Theta1,
            "theta2" => SweepParameter::Theta2,
            other => return Err(AppError::Config(format!("unknown sweep parameter {other:?}"))),
        };
        match (self.values, self.grid) {
            (Some(_), Some(_)) => Err(AppError::Config("sweep takes either values or grid, not both".into())),
            (Some(values), None) => {
                Ok(Sweep { parameter, values: values.iter().map(AngleValue::radians).collect::<Result<_>>()? })
            }
            (None, grid) => {
                let from = self.from.map(|a| a.radians()).transpose()?.unwrap_or(0.0);
                let to = self.to.map(|a| a.radians()).transpose()?.unwrap_or(std::f64::consts::FRAC_PI_2);
                Ok(Sweep::uniform(parameter, from, to, grid.unwrap_or(DEFAULT_GRID)))
            }
        }
    }
}

impl SinkFile {
    fn into_sink(self) -> OutputSink {
        match self {
            SinkFile::Series => OutputSink::Series,
            SinkFile::Snapshots => OutputSink::Snapshots,
            SinkFile::Sweep => OutputSink::Sweep,
            SinkFile::Transition => OutputSink::Transition,
        }
    }
}
