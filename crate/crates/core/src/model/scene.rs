//! Target-independent element inventory with semantic importance.

use serde::Serialize;

use super::element::{default_importance, AxisKind, ElementId, LayerKind};
use super::features::{classify_feature_points, FeaturePointKind};
use super::spec::ChartSpec;
use super::ticks::{AxisTicks, DEFAULT_X_TICKS, DEFAULT_Y_TICKS};

/// An element before it has a pixel position.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mark {
    pub id: ElementId,
    pub layer: LayerKind,
    pub importance: f64,
    pub content: MarkContent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MarkContent {
    Line {
        series: usize,
    },
    Point {
        series: usize,
        index: usize,
        feature: FeaturePointKind,
    },
    PointLabel {
        series: usize,
        index: usize,
        feature: FeaturePointKind,
        owner: ElementId,
        text: String,
    },
    Annotation {
        index: usize,
        text: String,
    },
    ChartTitle {
        text: String,
    },
    AxisTitle {
        axis: AxisKind,
        text: String,
    },
    AxisLine {
        axis: AxisKind,
    },
    TickMark {
        axis: AxisKind,
        tick: usize,
    },
    TickLabel {
        axis: AxisKind,
        tick: usize,
        text: String,
    },
    Gridline {
        tick: usize,
    },
}

/// The full mark inventory of a chart plus the tick sets its axes use.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scene {
    pub spec: ChartSpec,
    pub features: Vec<Vec<FeaturePointKind>>,
    pub x_ticks: AxisTicks,
    pub y_ticks: AxisTicks,
    pub marks: Vec<Mark>,
}

/// Identifies every chart element and gives it an importance in `[0, 1]`.
///
/// Data marks are numbered first so their ids stay stable when the axes are
/// rebuilt with different ticks.
pub fn assign_importance(spec: &ChartSpec) -> Scene {
    let ((x_min, x_max), (y_min, y_max)) = spec.data_extent();
    let x_ticks = AxisTicks::generate(
        spec.x_axis.kind,
        x_min,
        x_max,
        spec.x_axis.tick_count.unwrap_or(DEFAULT_X_TICKS),
    );
    let y_ticks = AxisTicks::generate(
        spec.y_axis.kind,
        y_min,
        y_max,
        spec.y_axis.tick_count.unwrap_or(DEFAULT_Y_TICKS),
    );
    Scene::build(spec.clone(), x_ticks, y_ticks)
}

impl Scene {
    pub fn build(spec: ChartSpec, x_ticks: AxisTicks, y_ticks: AxisTicks) -> Self {
        let features: Vec<_> = spec.series.iter().map(classify_feature_points).collect();
        let mut marks = Vec::new();
        let mut push = |layer: LayerKind, importance: f64, content: MarkContent| {
            let id = ElementId(marks.len() as u32);
            marks.push(Mark {
                id,
                layer,
                importance,
                content,
            });
            id
        };

        for (s, series) in spec.series.iter().enumerate() {
            push(
                LayerKind::DataLine,
                default_importance(LayerKind::DataLine, None),
                MarkContent::Line { series: s },
            );
            for (i, p) in series.points.iter().enumerate() {
                let feature = features[s][i];
                let owner = push(
                    LayerKind::DataPoint,
                    default_importance(LayerKind::DataPoint, Some(feature)),
                    MarkContent::Point {
                        series: s,
                        index: i,
                        feature,
                    },
                );
                push(
                    LayerKind::PointLabel,
                    default_importance(LayerKind::PointLabel, Some(feature)),
                    MarkContent::PointLabel {
                        series: s,
                        index: i,
                        feature,
                        owner,
                        text: format_value(p.y),
                    },
                );
            }
        }
        for (k, a) in spec.annotations.iter().enumerate() {
            push(
                LayerKind::Annotation,
                a.importance
                    .unwrap_or_else(|| default_importance(LayerKind::Annotation, None)),
                MarkContent::Annotation {
                    index: k,
                    text: a.text.clone(),
                },
            );
        }
        if let Some(title) = spec.title.as_ref().filter(|t| !t.is_empty()) {
            push(
                LayerKind::ChartTitle,
                default_importance(LayerKind::ChartTitle, None),
                MarkContent::ChartTitle {
                    text: title.clone(),
                },
            );
        }
        for (axis, ticks, title) in [
            (AxisKind::X, &x_ticks, &spec.x_axis.title),
            (AxisKind::Y, &y_ticks, &spec.y_axis.title),
        ] {
            push(
                LayerKind::AxisLine,
                default_importance(LayerKind::AxisLine, None),
                MarkContent::AxisLine { axis },
            );
            for (tick, text) in ticks.labels().into_iter().enumerate() {
                push(
                    LayerKind::TickMark,
                    default_importance(LayerKind::TickMark, None),
                    MarkContent::TickMark { axis, tick },
                );
                push(
                    LayerKind::TickLabel,
                    default_importance(LayerKind::TickLabel, None),
                    MarkContent::TickLabel { axis, tick, text },
                );
                if axis == AxisKind::Y {
                    push(
                        LayerKind::Gridline,
                        default_importance(LayerKind::Gridline, None),
                        MarkContent::Gridline { tick },
                    );
                }
            }
            if !title.is_empty() {
                push(
                    LayerKind::AxisTitle,
                    default_importance(LayerKind::AxisTitle, None),
                    MarkContent::AxisTitle {
                        axis,
                        text: title.clone(),
                    },
                );
            }
        }

        Self {
            spec,
            features,
            x_ticks,
            y_ticks,
            marks,
        }
    }

    /// Same chart with different axis ticks.
    pub fn with_ticks(&self, x_ticks: AxisTicks, y_ticks: AxisTicks) -> Self {
        Self::build(self.spec.clone(), x_ticks, y_ticks)
    }

    pub fn ticks(&self, axis: AxisKind) -> &AxisTicks {
        match axis {
            AxisKind::X => &self.x_ticks,
            AxisKind::Y => &self.y_ticks,
        }
    }
}

/// Compact value text: integers without a fraction, otherwise at most two
/// decimals with trailing zeros removed.
pub fn format_value(v: f64) -> String {
    let s = format!("{:.2}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
