//! Engine parameters, loadable from JSON with every field optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::metrics::{QuadtreeParams, Thresholds};
use crate::operators::{AnnealingParams, EliminationConfig, EliminationWeights};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct EngineConfig {
    pub thresholds: Thresholds,
    /// Minimum spacing between neighbouring tick labels, px.
    pub gap_min: f64,
    pub weights: EliminationWeights,
    /// Eliminate the lowest-scoring element first.
    pub lowest_first: bool,
    pub annealing: AnnealingParams,
    /// Share of local extrema the line simplification must keep.
    pub phi: f64,
    /// Targets with a smaller area (px²) collapse to a sparkline.
    pub sparkline_area: f64,
    pub cell_px: f64,
    pub quadtree: QuadtreeParams,
    pub seed: u64,
    pub max_passes: usize,
    pub font_size: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            thresholds: Thresholds::default(),
            gap_min: 4.0,
            weights: EliminationWeights::default(),
            lowest_first: false,
            annealing: AnnealingParams::default(),
            phi: 0.6,
            sparkline_area: 150_000.0,
            cell_px: 32.0,
            quadtree: QuadtreeParams::default(),
            seed: 0,
            max_passes: 10,
            font_size: 10.0,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl EngineConfig {
    pub fn from_json_str(document: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(document);
        let config: Self = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        config.validated()
    }

    pub fn from_value(value: Value) -> Result<Self, ConfigError> {
        let config: Self = serde_path_to_error::deserialize(value).map_err(|e| ConfigError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        config.validated()
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Applies a partial JSON object on top of this config.
    pub fn with_overrides(&self, overrides: &Value) -> Result<Self, ConfigError> {
        let mut base = serde_json::to_value(self).expect("config serializes");
        merge(&mut base, overrides);
        Self::from_value(base)
    }

    /// Checks every parameter and normalizes the elimination weights.
    pub fn validated(mut self) -> Result<Self, ConfigError> {
        let positive = [
            ("thresholds.maxCellDensity", self.thresholds.max_cell_density),
            ("thresholds.minFontPx", self.thresholds.min_font_px),
            ("gapMin", self.gap_min),
            ("sparklineArea", self.sparkline_area),
            ("cellPx", self.cell_px),
            ("fontSize", self.font_size),
            ("annealing.initialTemperature", self.annealing.initial_temperature),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&self.phi) {
            return Err(ConfigError::Invalid(format!("phi must lie in [0, 1], got {}", self.phi)));
        }
        if !(self.annealing.decay > 0.0 && self.annealing.decay <= 1.0) {
            return Err(ConfigError::Invalid("annealing.decay must lie in (0, 1]".into()));
        }
        if self.max_passes == 0 {
            return Err(ConfigError::Invalid("maxPasses must be at least 1".into()));
        }
        if self.quadtree.capacity == 0 {
            return Err(ConfigError::Invalid("quadtree.capacity must be at least 1".into()));
        }
        self.weights = self.weights.normalized().ok_or_else(|| {
            ConfigError::Invalid("weights must be non-negative with a positive sum".into())
        })?;
        Ok(self)
    }

    pub fn elimination(&self, seed: u64) -> EliminationConfig {
        EliminationConfig {
            weights: self.weights,
            lowest_first: self.lowest_first,
            annealing: self.annealing,
            cell_px: self.cell_px,
            quadtree: self.quadtree,
            seed,
        }
    }
}

fn merge(base: &mut Value, patch: &Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (slot, v) => *slot = v.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(EngineConfig::from_json_str("{}").unwrap(), EngineConfig::default());
    }

    #[test]
    fn weights_normalized_at_load() {
        let c = EngineConfig::from_json_str(r#"{"weights": {"wImp": 2, "wDens": 1, "wOv": 1}}"#).unwrap();
        assert_eq!(c.weights.w_imp, 0.5);
        assert_eq!(c.weights.w_ov, 0.25);
    }

    #[test]
    fn unknown_field_reports_path() {
        let err = EngineConfig::from_json_str(r#"{"thresholds": {"maxDensity": 1}}"#).unwrap_err();
        assert!(err.to_string().starts_with("thresholds"), "{err}");
    }

    #[test]
    fn invalid_values_rejected() {
        assert!(EngineConfig::from_json_str(r#"{"maxPasses": 0}"#).is_err());
        assert!(EngineConfig::from_json_str(r#"{"gapMin": -1}"#).is_err());
        assert!(EngineConfig::from_json_str(r#"{"weights": {"wImp": 0, "wDens": 0, "wOv": 0}}"#).is_err());
    }

    #[test]
    fn overrides_merge_deeply() {
        let c = EngineConfig::default()
            .with_overrides(&json!({"annealing": {"iterations": 5}, "seed": 9}))
            .unwrap();
        assert_eq!(c.annealing.iterations, 5);
        assert_eq!(c.annealing.decay, 0.9);
        assert_eq!(c.seed, 9);
    }
}
