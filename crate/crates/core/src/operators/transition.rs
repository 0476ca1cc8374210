//! Semantic transition to the sparkline form: axes give way to a reference
//! line and labels carrying the exact data range.

use serde_json::json;

use super::log::{MetricDelta, OperatorKind, OperatorLogEntry};
use crate::geometry::{Point, Rect, Size};
use crate::metrics::total_collision_area;
use crate::model::{
    AxisKind, Element, ElementId, FeaturePointKind, LabelRole, LayerKind, Payload, Placement,
    TextAnchor, TextContent, TextMetricsModel, REPLACEMENT_IMPORTANCE,
};

const LABEL_GAP: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionReason {
    /// The target is below the sparkline area threshold.
    Sparkline,
    /// Every y tick label was eliminated.
    AxisEliminated,
}

/// Why the transition should fire for this element set, if at all.
pub fn transition_due(elements: &[Element], target: Size, sparkline_area: f64) -> Option<TransitionReason> {
    if elements.iter().any(|e| e.layer == LayerKind::ReferenceLine) {
        return None;
    }
    if target.area() < sparkline_area {
        return Some(TransitionReason::Sparkline);
    }
    let mut y_labels = elements
        .iter()
        .filter(|e| e.layer == LayerKind::TickLabel && e.axis() == Some(AxisKind::Y))
        .peekable();
    if y_labels.peek().is_some() && y_labels.all(|e| !e.visible) {
        return Some(TransitionReason::AxisEliminated);
    }
    None
}

/// Exact global extrema over all markers: `(value, marker index)`, first
/// occurrence winning ties.
fn extrema(elements: &[Element]) -> Option<((f64, usize), (f64, usize))> {
    let mut min: Option<(f64, usize)> = None;
    let mut max: Option<(f64, usize)> = None;
    for (k, e) in elements.iter().enumerate() {
        if let Payload::Marker { datum, .. } = &e.payload {
            if min.is_none_or(|(v, _)| datum.y < v) {
                min = Some((datum.y, k));
            }
            if max.is_none_or(|(v, _)| datum.y > v) {
                max = Some((datum.y, k));
            }
        }
    }
    Some((min?, max?))
}

/// Replaces the axes with a reference line at the global minimum and range
/// labels, hiding the value labels they supersede. In sparkline form every
/// value label and the chart title go too.
pub fn semantic_transition(
    mut elements: Vec<Element>,
    target: Size,
    plot: Rect,
    reason: TransitionReason,
    text: &TextMetricsModel,
    marker_radius: f64,
) -> (Vec<Element>, Option<OperatorLogEntry>) {
    let Some(((min_v, min_k), (max_v, max_k))) = extrema(&elements) else {
        return (elements, None);
    };
    let collision_before = total_collision_area(&elements);
    let sparkline = reason == TransitionReason::Sparkline;
    let mut affected = Vec::new();
    for e in elements.iter_mut().filter(|e| e.visible) {
        let value_label = e.text().is_some_and(|t| t.role == LabelRole::Value);
        let hide = e.layer.is_axis_framing()
            || (sparkline && e.layer == LayerKind::ChartTitle)
            || (value_label && (sparkline || e.feature().is_some_and(|f| f.is_global_extremum())));
        if hide {
            e.visible = false;
            affected.push(e.id);
        }
    }

    let mut next_id = elements.iter().map(|e| e.id.0 + 1).max().unwrap_or(0);
    let mut fresh = |elements: &mut Vec<Element>, layer, bbox: Rect, anchor, payload| {
        let id = ElementId(next_id);
        next_id += 1;
        elements.push(Element {
            id,
            layer,
            bbox,
            importance: REPLACEMENT_IMPORTANCE,
            payload,
            anchor,
            visible: true,
        });
        id
    };

    let center = |k: usize| elements[k].anchor;
    let y_min = center(min_k).y;
    let from = Point::new(plot.x, y_min);
    let to = Point::new(plot.right(), y_min);
    let rule_box = Rect::from_corners(from, to);
    affected.push(fresh(
        &mut elements,
        LayerKind::ReferenceLine,
        rule_box,
        rule_box.center(),
        Payload::Rule { axis: None, from, to },
    ));

    let font = text.font_size;
    let line_h = text.line_height_at(font);
    let mut range_label = |elements: &mut Vec<Element>, k: usize, role: LabelRole, s: String, v: f64, below: bool| {
        let c = elements[k].anchor;
        let owner = elements[k].id;
        let feature = match role {
            LabelRole::RangeMin => FeaturePointKind::GlobalMin,
            _ => FeaturePointKind::GlobalMax,
        };
        let w = text.width_at(&s, font);
        let top = if below {
            c.y + marker_radius + LABEL_GAP
        } else {
            c.y - marker_radius - LABEL_GAP - line_h
        };
        let left = (c.x - w / 2.0).clamp(0.0, (target.width - w).max(0.0));
        let top = top.clamp(0.0, (target.height - line_h).max(0.0));
        let bbox = Rect::new(left, top, w, line_h);
        let content = TextContent {
            text: s,
            font_size: font,
            text_anchor: TextAnchor::Middle,
            role,
            placement: Placement::Default,
            value: Some(v),
            owner: Some(owner),
            feature: Some(feature),
            axis: None,
        };
        fresh(elements, LayerKind::PointLabel, bbox, c, Payload::Text(content))
    };
    if max_v > min_v {
        affected.push(range_label(&mut elements, max_k, LabelRole::RangeMax, format!("max {max_v}"), max_v, false));
        affected.push(range_label(&mut elements, min_k, LabelRole::RangeMin, format!("min {min_v}"), min_v, true));
    } else {
        affected.push(range_label(
            &mut elements,
            min_k,
            LabelRole::RangeBoth,
            format!("min = max = {min_v}"),
            min_v,
            false,
        ));
    }

    let entry = OperatorLogEntry::new(
        OperatorKind::SemanticTransition,
        affected,
        json!({
            "reason": match reason {
                TransitionReason::Sparkline => "sparkline",
                TransitionReason::AxisEliminated => "axisEliminated",
            },
            "min": min_v,
            "max": max_v,
        }),
        MetricDelta {
            collision_before,
            collision_after: total_collision_area(&elements),
            ..Default::default()
        },
    );
    (elements, Some(entry))
}
