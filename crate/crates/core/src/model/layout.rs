//! Maps a [`Scene`] onto a target canvas.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::element::{
    AxisKind, Element, LabelRole, Payload, Placement, TextAnchor, TextContent,
};
use super::scene::{MarkContent, Scene};
use super::text::TextMetricsModel;
use crate::geometry::{Point, Rect, Size};

const TICK_LENGTH: f64 = 5.0;
const LABEL_GAP: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LayoutStyle {
    pub marker_radius: f64,
    pub title_scale: f64,
}

impl Default for LayoutStyle {
    fn default() -> Self {
        Self {
            marker_radius: 3.0,
            title_scale: 1.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("target size {0} must be positive and finite")]
    InvalidTarget(Size),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LayoutWarning {
    /// The canvas cannot host the default margins; zero margins were used.
    MarginsDropped,
}

/// Margins on each side of the plot area, as `(left/right, top/bottom)`.
pub fn margins(target: Size) -> (f64, f64) {
    (
        (0.08 * target.width).clamp(4.0, 60.0),
        (0.08 * target.height).clamp(4.0, 60.0),
    )
}

/// Linear data-to-pixel mapping for both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Scales {
    pub plot: Rect,
    pub x_domain: (f64, f64),
    pub y_domain: (f64, f64),
}

impl Scales {
    pub fn x(&self, v: f64) -> f64 {
        let (d0, d1) = self.x_domain;
        self.plot.x + (v - d0) / (d1 - d0) * self.plot.width
    }

    /// Screen y grows downwards, so larger values map higher up.
    pub fn y(&self, v: f64) -> f64 {
        let (d0, d1) = self.y_domain;
        self.plot.bottom() - (v - d0) / (d1 - d0) * self.plot.height
    }

    pub fn point(&self, x: f64, y: f64) -> Point {
        Point::new(self.x(x), self.y(y))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layout {
    pub target: Size,
    pub scales: Scales,
    pub elements: Vec<Element>,
    pub warnings: Vec<LayoutWarning>,
}

pub fn layout_elements(
    scene: &Scene,
    target: Size,
    text: &TextMetricsModel,
) -> Result<Layout, LayoutError> {
    layout_with_style(scene, target, text, &LayoutStyle::default())
}

/// Places every mark of `scene` on a `target`-sized canvas.
pub fn layout_with_style(
    scene: &Scene,
    target: Size,
    text: &TextMetricsModel,
    style: &LayoutStyle,
) -> Result<Layout, LayoutError> {
    if !(target.width > 0.0 && target.height > 0.0)
        || !target.width.is_finite()
        || !target.height.is_finite()
    {
        return Err(LayoutError::InvalidTarget(target));
    }
    let mut warnings = Vec::new();
    let (mut mx, mut my) = margins(target);
    if target.width - 2.0 * mx < 1.0 || target.height - 2.0 * my < 1.0 {
        warnings.push(LayoutWarning::MarginsDropped);
        mx = 0.0;
        my = 0.0;
    }
    let plot = Rect::new(mx, my, target.width - 2.0 * mx, target.height - 2.0 * my);
    let scales = Scales {
        plot,
        x_domain: scene.x_ticks.domain(),
        y_domain: scene.y_ticks.domain(),
    };

    let font = text.font_size;
    let line_h = text.line_height_at(font);
    let r = style.marker_radius;
    let spec = &scene.spec;

    let text_el = |t: String, font_size: f64, role: LabelRole| TextContent {
        text: t,
        font_size,
        text_anchor: TextAnchor::Middle,
        role,
        placement: Placement::Default,
        value: None,
        owner: None,
        feature: None,
        axis: None,
    };

    let mut elements = Vec::with_capacity(scene.marks.len());
    for mark in &scene.marks {
        let (bbox, anchor, payload) = match &mark.content {
            MarkContent::Line { series } => {
                let vertices: Vec<Point> = spec.series[*series]
                    .points
                    .iter()
                    .map(|p| scales.point(p.x, p.y))
                    .collect();
                let bbox = Rect::hull(&vertices).unwrap_or_default();
                (
                    bbox,
                    bbox.center(),
                    Payload::Polyline {
                        series: *series,
                        vertices,
                    },
                )
            }
            MarkContent::Point {
                series,
                index,
                feature,
            } => {
                let datum = spec.series[*series].points[*index];
                let center = scales.point(datum.x, datum.y);
                (
                    Rect::new(center.x - r, center.y - r, 2.0 * r, 2.0 * r),
                    center,
                    Payload::Marker {
                        series: *series,
                        index: *index,
                        feature: *feature,
                        datum,
                        center,
                        radius: r,
                    },
                )
            }
            MarkContent::PointLabel {
                series,
                index,
                feature,
                owner,
                text: t,
            } => {
                let datum = spec.series[*series].points[*index];
                let center = scales.point(datum.x, datum.y);
                let w = text.width_at(t, font);
                let bbox = Rect::new(center.x - w / 2.0, center.y - r - LABEL_GAP - line_h, w, line_h);
                let mut content = text_el(t.clone(), font, LabelRole::Value);
                content.value = Some(datum.y);
                content.owner = Some(*owner);
                content.feature = Some(*feature);
                (bbox, center, Payload::Text(content))
            }
            MarkContent::Annotation { index, text: t } => {
                let a = &spec.annotations[*index];
                let at = scales.point(a.x, a.y);
                let w = text.width_at(t, font);
                let bbox = Rect::new(at.x + 4.0, at.y - 4.0 - line_h, w, line_h);
                let mut content = text_el(t.clone(), font, LabelRole::Annotation);
                content.text_anchor = TextAnchor::Start;
                (bbox, at, Payload::Text(content))
            }
            MarkContent::ChartTitle { text: t } => {
                let size = font * style.title_scale;
                let (w, h) = text.measure_at(t, size);
                let top = ((plot.y - h) / 2.0).max(0.0);
                let bbox = Rect::new(target.width / 2.0 - w / 2.0, top, w, h);
                (
                    bbox,
                    bbox.center(),
                    Payload::Text(text_el(t.clone(), size, LabelRole::ChartTitle)),
                )
            }
            MarkContent::AxisTitle { axis, text: t } => {
                let (w, h) = text.measure_at(t, font);
                let mut content = text_el(t.clone(), font, LabelRole::AxisTitle);
                content.axis = Some(*axis);
                let bbox = match axis {
                    AxisKind::X => Rect::new(
                        plot.x + plot.width / 2.0 - w / 2.0,
                        plot.bottom() + TICK_LENGTH + LABEL_GAP + line_h + LABEL_GAP,
                        w,
                        h,
                    ),
                    AxisKind::Y => {
                        content.text_anchor = TextAnchor::Start;
                        Rect::new(plot.x, (plot.y - 4.0 - h).max(0.0), w, h)
                    }
                };
                (bbox, bbox.center(), Payload::Text(content))
            }
            MarkContent::AxisLine { axis } => {
                let (from, to) = match axis {
                    AxisKind::X => (
                        Point::new(plot.x, plot.bottom()),
                        Point::new(plot.right(), plot.bottom()),
                    ),
                    AxisKind::Y => (Point::new(plot.x, plot.y), Point::new(plot.x, plot.bottom())),
                };
                rule(from, to, Some(*axis))
            }
            MarkContent::TickMark { axis, tick } => {
                let v = scene.ticks(*axis).value(*tick);
                let (from, to) = match axis {
                    AxisKind::X => {
                        let x = scales.x(v);
                        (
                            Point::new(x, plot.bottom()),
                            Point::new(x, plot.bottom() + TICK_LENGTH),
                        )
                    }
                    AxisKind::Y => {
                        let y = scales.y(v);
                        (Point::new(plot.x - TICK_LENGTH, y), Point::new(plot.x, y))
                    }
                };
                rule(from, to, Some(*axis))
            }
            MarkContent::TickLabel {
                axis,
                tick,
                text: t,
            } => {
                let v = scene.ticks(*axis).value(*tick);
                let w = text.width_at(t, font);
                let mut content = text_el(t.clone(), font, LabelRole::Tick);
                content.axis = Some(*axis);
                content.value = Some(v);
                let bbox = match axis {
                    AxisKind::X => Rect::new(
                        scales.x(v) - w / 2.0,
                        plot.bottom() + TICK_LENGTH + LABEL_GAP,
                        w,
                        line_h,
                    ),
                    AxisKind::Y => {
                        content.text_anchor = TextAnchor::End;
                        Rect::new(
                            plot.x - TICK_LENGTH - LABEL_GAP - w,
                            scales.y(v) - line_h / 2.0,
                            w,
                            line_h,
                        )
                    }
                };
                (bbox, bbox.center(), Payload::Text(content))
            }
            MarkContent::Gridline { tick } => {
                let y = scales.y(scene.y_ticks.value(*tick));
                rule(Point::new(plot.x, y), Point::new(plot.right(), y), None)
            }
        };
        elements.push(Element {
            id: mark.id,
            layer: mark.layer,
            bbox,
            importance: mark.importance,
            payload,
            anchor,
            visible: true,
        });
    }

    Ok(Layout {
        target,
        scales,
        elements,
        warnings,
    })
}

fn rule(from: Point, to: Point, axis: Option<AxisKind>) -> (Rect, Point, Payload) {
    let bbox = Rect::from_corners(from, to);
    (bbox, bbox.center(), Payload::Rule { axis, from, to })
}

/// Re-anchors the box of a text element for a new anchor point.
pub fn text_box(anchor: TextAnchor, x: f64, top: f64, width: f64, height: f64) -> Rect {
    let left = match anchor {
        TextAnchor::Start => x,
        TextAnchor::Middle => x - width / 2.0,
        TextAnchor::End => x - width,
    };
    Rect::new(left, top, width, height)
}
