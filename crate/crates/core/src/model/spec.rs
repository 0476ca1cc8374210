//! Declarative line-chart input document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Size;

/// A data-space sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub name: String,
    pub points: Vec<DataPoint>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            name: name.into(),
            points: points
                .into_iter()
                .map(|(x, y)| DataPoint { x, y })
                .collect(),
        }
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisType {
    #[default]
    Linear,
    /// Unix epoch seconds.
    Time,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AxisSpec {
    #[serde(default)]
    pub title: String,
    #[serde(default, rename = "type")]
    pub kind: AxisType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tick_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Annotation {
    pub x: f64,
    pub y: f64,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub importance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginalSize {
    pub width: f64,
    pub height: f64,
}

impl Default for OriginalSize {
    fn default() -> Self {
        Self {
            width: 800.0,
            height: 600.0,
        }
    }
}

/// Validated chart specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ChartSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub series: Vec<Series>,
    #[serde(default)]
    pub x_axis: AxisSpec,
    #[serde(default)]
    pub y_axis: AxisSpec,
    #[serde(default)]
    pub annotations: Vec<Annotation>,
    #[serde(default)]
    pub original_size: OriginalSize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecErrorKind {
    #[error("{0}")]
    Schema(String),
    #[error("chart has no series")]
    NoSeries,
    #[error("series needs at least 2 points")]
    TooFewPoints,
    #[error("non-increasing x")]
    NonIncreasingX,
    #[error("value is not finite")]
    NonFinite,
    #[error("size components must be positive")]
    NonPositiveSize,
    #[error("annotation anchor lies outside the data domain")]
    AnchorOutOfDomain,
    #[error("importance must lie in [0, 1]")]
    ImportanceOutOfRange,
}

/// A rejected chart document, with the path of the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{path}: {kind}")]
pub struct SpecError {
    pub path: String,
    pub kind: SpecErrorKind,
}

impl SpecError {
    fn at(path: impl Into<String>, kind: SpecErrorKind) -> Self {
        Self {
            path: path.into(),
            kind,
        }
    }
}

/// Parses and validates a chart document.
pub fn parse_chart_spec(document: &str) -> Result<ChartSpec, SpecError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let spec: ChartSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        SpecError::at(path, SpecErrorKind::Schema(e.into_inner().to_string()))
    })?;
    spec.validate()?;
    Ok(spec)
}

/// Same as [`parse_chart_spec`] for an already-decoded JSON value.
pub fn chart_spec_from_value(value: serde_json::Value) -> Result<ChartSpec, SpecError> {
    let spec: ChartSpec = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        SpecError::at(path, SpecErrorKind::Schema(e.into_inner().to_string()))
    })?;
    spec.validate()?;
    Ok(spec)
}

impl ChartSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.series.is_empty() {
            return Err(SpecError::at("series", SpecErrorKind::NoSeries));
        }
        for (s, series) in self.series.iter().enumerate() {
            if series.points.len() < 2 {
                return Err(SpecError::at(
                    format!("series[{s}].points"),
                    SpecErrorKind::TooFewPoints,
                ));
            }
            for (i, p) in series.points.iter().enumerate() {
                if !p.x.is_finite() {
                    return Err(SpecError::at(
                        format!("series[{s}].points[{i}].x"),
                        SpecErrorKind::NonFinite,
                    ));
                }
                if !p.y.is_finite() {
                    return Err(SpecError::at(
                        format!("series[{s}].points[{i}].y"),
                        SpecErrorKind::NonFinite,
                    ));
                }
                if i > 0 && p.x <= series.points[i - 1].x {
                    return Err(SpecError::at(
                        format!("series[{s}].points[{i}].x"),
                        SpecErrorKind::NonIncreasingX,
                    ));
                }
            }
        }
        let OriginalSize { width, height } = self.original_size;
        if !(width > 0.0 && width.is_finite()) {
            return Err(SpecError::at(
                "originalSize.width",
                SpecErrorKind::NonPositiveSize,
            ));
        }
        if !(height > 0.0 && height.is_finite()) {
            return Err(SpecError::at(
                "originalSize.height",
                SpecErrorKind::NonPositiveSize,
            ));
        }
        let (x_range, y_range) = self.data_extent();
        for (k, a) in self.annotations.iter().enumerate() {
            if !a.x.is_finite() || !a.y.is_finite() {
                return Err(SpecError::at(
                    format!("annotations[{k}]"),
                    SpecErrorKind::NonFinite,
                ));
            }
            if a.x < x_range.0 || a.x > x_range.1 || a.y < y_range.0 || a.y > y_range.1 {
                return Err(SpecError::at(
                    format!("annotations[{k}]"),
                    SpecErrorKind::AnchorOutOfDomain,
                ));
            }
            if let Some(imp) = a.importance {
                if !(0.0..=1.0).contains(&imp) {
                    return Err(SpecError::at(
                        format!("annotations[{k}].importance"),
                        SpecErrorKind::ImportanceOutOfRange,
                    ));
                }
            }
        }
        Ok(())
    }

    /// `((x_min, x_max), (y_min, y_max))` over every series.
    pub fn data_extent(&self) -> ((f64, f64), (f64, f64)) {
        let mut x = (f64::INFINITY, f64::NEG_INFINITY);
        let mut y = (f64::INFINITY, f64::NEG_INFINITY);
        for p in self.series.iter().flat_map(|s| s.points.iter()) {
            x = (x.0.min(p.x), x.1.max(p.x));
            y = (y.0.min(p.y), y.1.max(p.y));
        }
        (x, y)
    }

    pub fn original_size(&self) -> Size {
        Size::new(self.original_size.width, self.original_size.height)
    }

    pub fn point_count(&self) -> usize {
        self.series.iter().map(|s| s.points.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_gets_default_axes() {
        let spec =
            parse_chart_spec(r#"{"series":[{"name":"a","points":[{"x":0,"y":1},{"x":1,"y":2}]}]}"#)
                .unwrap();
        assert_eq!(spec.series.len(), 1);
        assert_eq!(spec.x_axis, AxisSpec::default());
        assert_eq!(spec.y_axis.kind, AxisType::Linear);
        assert!(spec.annotations.is_empty());
    }

    #[test]
    fn repeated_x_is_rejected_with_path() {
        let err =
            parse_chart_spec(r#"{"series":[{"name":"a","points":[{"x":1,"y":5},{"x":1,"y":7}]}]}"#)
                .unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::NonIncreasingX);
        assert_eq!(err.path, "series[0].points[1].x");
        assert!(err.to_string().contains("non-increasing x"));
    }

    #[test]
    fn empty_series_list_is_rejected() {
        let err = parse_chart_spec(r#"{"series":[]}"#).unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::NoSeries);
        let err = parse_chart_spec(r#"{"series":[{"name":"a","points":[]}]}"#).unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::TooFewPoints);
    }

    #[test]
    fn unknown_key_reports_path() {
        let err = parse_chart_spec(
            r#"{"series":[{"name":"a","points":[{"x":0,"y":1,"z":3},{"x":1,"y":2}]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err.kind, SpecErrorKind::Schema(_)));
        assert!(err.path.starts_with("series[0].points[0]"), "{}", err.path);
    }

    #[test]
    fn wrong_type_reports_path() {
        let err = parse_chart_spec(
            r#"{"series":[{"name":"a","points":[{"x":0,"y":1},{"x":1,"y":2}]}],"originalSize":{"width":"wide","height":3}}"#,
        )
        .unwrap_err();
        assert_eq!(err.path, "originalSize.width");
    }

    #[test]
    fn annotation_outside_domain() {
        let err = parse_chart_spec(
            r#"{"series":[{"name":"a","points":[{"x":0,"y":1},{"x":1,"y":2}]}],
                "annotations":[{"x":5,"y":1,"text":"late"}]}"#,
        )
        .unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::AnchorOutOfDomain);
        assert_eq!(err.path, "annotations[0]");
    }

    #[test]
    fn zero_original_size_rejected() {
        let err = parse_chart_spec(
            r#"{"series":[{"name":"a","points":[{"x":0,"y":1},{"x":1,"y":2}]}],
                "originalSize":{"width":0,"height":10}}"#,
        )
        .unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::NonPositiveSize);
    }
}
