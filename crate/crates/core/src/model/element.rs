//! Laid-out chart primitives.

use serde::{Deserialize, Serialize};

use super::features::FeaturePointKind;
use super::spec::DataPoint;
use crate::geometry::{Point, Rect};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl std::fmt::Display for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LayerKind {
    DataLine,
    DataPoint,
    PointLabel,
    Annotation,
    AxisLine,
    TickMark,
    TickLabel,
    AxisTitle,
    ChartTitle,
    Gridline,
    ReferenceLine,
}

impl LayerKind {
    pub const ALL: [LayerKind; 11] = [
        LayerKind::DataLine,
        LayerKind::DataPoint,
        LayerKind::PointLabel,
        LayerKind::Annotation,
        LayerKind::AxisLine,
        LayerKind::TickMark,
        LayerKind::TickLabel,
        LayerKind::AxisTitle,
        LayerKind::ChartTitle,
        LayerKind::Gridline,
        LayerKind::ReferenceLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DataLine => "DataLine",
            Self::DataPoint => "DataPoint",
            Self::PointLabel => "PointLabel",
            Self::Annotation => "Annotation",
            Self::AxisLine => "AxisLine",
            Self::TickMark => "TickMark",
            Self::TickLabel => "TickLabel",
            Self::AxisTitle => "AxisTitle",
            Self::ChartTitle => "ChartTitle",
            Self::Gridline => "Gridline",
            Self::ReferenceLine => "ReferenceLine",
        }
    }

    pub fn is_text(self) -> bool {
        matches!(
            self,
            Self::PointLabel | Self::Annotation | Self::TickLabel | Self::AxisTitle | Self::ChartTitle
        )
    }

    /// Layers whose overlaps count as conflicts among themselves.
    pub fn is_conflict_label(self) -> bool {
        matches!(self, Self::PointLabel | Self::Annotation | Self::TickLabel)
    }

    /// Labels that the jitter operator may displace.
    pub fn is_movable_label(self) -> bool {
        matches!(self, Self::PointLabel | Self::Annotation)
    }

    /// Framing layers removed when a chart collapses to its sparkline form.
    pub fn is_axis_framing(self) -> bool {
        matches!(
            self,
            Self::AxisLine | Self::TickMark | Self::TickLabel | Self::Gridline | Self::AxisTitle
        )
    }
}

/// Whether an overlap between `a` and `b` is a legibility conflict.
pub fn is_conflict_pair(a: LayerKind, b: LayerKind) -> bool {
    (a.is_conflict_label() && (b.is_conflict_label() || b == LayerKind::DataPoint))
        || (b.is_conflict_label() && a == LayerKind::DataPoint)
}

/// Importance defaults per layer, refined by the data point's feature kind.
pub fn default_importance(layer: LayerKind, feature: Option<FeaturePointKind>) -> f64 {
    use FeaturePointKind::*;
    match layer {
        LayerKind::DataLine => 1.0,
        LayerKind::PointLabel => match feature {
            Some(First | Last | GlobalMax | GlobalMin) => 0.9,
            Some(LocalMax | LocalMin) => 0.75,
            Some(Intermediate) | None => 0.25,
        },
        LayerKind::DataPoint => match feature {
            Some(First | Last | GlobalMax | GlobalMin) => 0.95,
            Some(LocalMax | LocalMin) => 0.8,
            Some(Intermediate) | None => 0.3,
        },
        LayerKind::Annotation => 0.7,
        LayerKind::ChartTitle => 0.65,
        LayerKind::AxisLine => 0.5,
        LayerKind::AxisTitle => 0.45,
        LayerKind::TickLabel => 0.4,
        LayerKind::TickMark => 0.35,
        LayerKind::Gridline => 0.1,
        LayerKind::ReferenceLine => REPLACEMENT_IMPORTANCE,
    }
}

/// Importance carried by elements inserted as semantic replacements.
pub const REPLACEMENT_IMPORTANCE: f64 = 0.85;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisKind {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TextAnchor {
    Start,
    #[default]
    Middle,
    End,
}

impl TextAnchor {
    pub fn as_svg(self) -> &'static str {
        match self {
            Self::Start => "start",
            Self::Middle => "middle",
            Self::End => "end",
        }
    }
}

/// Where a movable label sits relative to its anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Placement {
    /// Initial layout position.
    #[default]
    Default,
    Quadrant(Direction),
}

/// Diagonal neighbourhoods around an anchor cell, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    NW,
    NE,
    SW,
    SE,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::NW, Direction::NE, Direction::SW, Direction::SE];

    /// Unit signs `(dx, dy)` in screen space.
    pub fn signs(self) -> (f64, f64) {
        match self {
            Self::NW => (-1.0, -1.0),
            Self::NE => (1.0, -1.0),
            Self::SW => (-1.0, 1.0),
            Self::SE => (1.0, 1.0),
        }
    }

    /// Text grows away from the anchor.
    pub fn text_anchor(self) -> TextAnchor {
        match self {
            Self::NE | Self::SE => TextAnchor::Start,
            Self::NW | Self::SW => TextAnchor::End,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelRole {
    /// Value of a data point.
    Value,
    Annotation,
    Tick,
    ChartTitle,
    AxisTitle,
    /// Replacement label carrying the global minimum.
    RangeMin,
    /// Replacement label carrying the global maximum.
    RangeMax,
    /// Replacement label for a flat series where min and max coincide.
    RangeBoth,
}

impl LabelRole {
    pub fn is_range(self) -> bool {
        matches!(self, Self::RangeMin | Self::RangeMax | Self::RangeBoth)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TextContent {
    pub text: String,
    pub font_size: f64,
    pub text_anchor: TextAnchor,
    pub role: LabelRole,
    pub placement: Placement,
    /// Exact numeric value carried by the label, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    /// The data point this label describes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub owner: Option<ElementId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feature: Option<FeaturePointKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<AxisKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Payload {
    #[serde(rename_all = "camelCase")]
    Polyline { series: usize, vertices: Vec<Point> },
    #[serde(rename_all = "camelCase")]
    Marker {
        series: usize,
        index: usize,
        feature: FeaturePointKind,
        datum: DataPoint,
        center: Point,
        radius: f64,
    },
    Text(TextContent),
    #[serde(rename_all = "camelCase")]
    Rule {
        #[serde(skip_serializing_if = "Option::is_none")]
        axis: Option<AxisKind>,
        from: Point,
        to: Point,
    },
}

/// A positioned chart primitive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Element {
    pub id: ElementId,
    pub layer: LayerKind,
    pub bbox: Rect,
    pub importance: f64,
    pub payload: Payload,
    pub anchor: Point,
    pub visible: bool,
}

impl Element {
    pub fn text(&self) -> Option<&TextContent> {
        match &self.payload {
            Payload::Text(t) => Some(t),
            _ => None,
        }
    }

    pub fn text_mut(&mut self) -> Option<&mut TextContent> {
        match &mut self.payload {
            Payload::Text(t) => Some(t),
            _ => None,
        }
    }

    /// Feature kind of the data point this element represents or labels.
    pub fn feature(&self) -> Option<FeaturePointKind> {
        match &self.payload {
            Payload::Marker { feature, .. } => Some(*feature),
            Payload::Text(t) => t.feature,
            _ => None,
        }
    }

    pub fn owner(&self) -> Option<ElementId> {
        self.text().and_then(|t| t.owner)
    }

    pub fn axis(&self) -> Option<AxisKind> {
        match &self.payload {
            Payload::Text(t) => t.axis,
            Payload::Rule { axis, .. } => *axis,
            _ => None,
        }
    }

    pub fn is_range_label(&self) -> bool {
        self.text().is_some_and(|t| t.role.is_range())
    }
}
