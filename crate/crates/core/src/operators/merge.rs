//! Tick merging: widens the tick interval until adjacent labels separate.

use serde_json::json;

use super::log::{MetricDelta, OperatorKind, OperatorLogEntry};
use crate::geometry::{Rect, Size};
use crate::metrics::total_collision_area;
use crate::model::{
    layout_with_style, AxisKind, Element, Layout, LayoutError, LayoutStyle, LayerKind, Scene,
    TextMetricsModel,
};

/// Whether two neighbouring labels along `axis` overlap or sit closer than
/// `gap_min`. `boxes` may come in any order.
pub fn adjacent_ticks_conflict(boxes: &[Rect], axis: AxisKind, gap_min: f64) -> bool {
    let mut spans: Vec<(f64, f64)> = boxes
        .iter()
        .map(|b| match axis {
            AxisKind::X => (b.x, b.right()),
            AxisKind::Y => (b.y, b.bottom()),
        })
        .collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    spans.windows(2).any(|w| w[1].0 - w[0].1 < gap_min)
}

fn tick_label_boxes(elements: &[Element], axis: AxisKind) -> Vec<Rect> {
    elements
        .iter()
        .filter(|e| e.layer == LayerKind::TickLabel && e.axis() == Some(axis))
        .map(|e| e.bbox)
        .collect()
}

fn tick_label_ids(elements: &[Element], axis: AxisKind) -> Vec<crate::model::ElementId> {
    elements
        .iter()
        .filter(|e| e.layer == LayerKind::TickLabel && e.axis() == Some(axis))
        .map(|e| e.id)
        .collect()
}

pub struct MergeOutcome {
    pub scene: Scene,
    pub layout: Layout,
    /// One entry per axis whose ticks were merged.
    pub entries: Vec<OperatorLogEntry>,
}

/// Doubles each axis' tick interval, keeping every second tick from the
/// first, while adjacent tick labels conflict and more than two ticks remain.
pub fn merge_ticks(
    scene: &Scene,
    target: Size,
    text: &TextMetricsModel,
    style: &LayoutStyle,
    gap_min: f64,
) -> Result<MergeOutcome, LayoutError> {
    let mut scene = scene.clone();
    let mut layout = layout_with_style(&scene, target, text, style)?;
    let mut entries = Vec::new();
    for axis in [AxisKind::X, AxisKind::Y] {
        let before_ticks = scene.ticks(axis).clone();
        let before_ids = tick_label_ids(&layout.elements, axis);
        let collision_before = total_collision_area(&layout.elements);
        let mut doublings = 0;
        while scene.ticks(axis).len() > 2
            && adjacent_ticks_conflict(&tick_label_boxes(&layout.elements, axis), axis, gap_min)
        {
            let (x, y) = match axis {
                AxisKind::X => (scene.x_ticks.doubled(), scene.y_ticks.clone()),
                AxisKind::Y => (scene.x_ticks.clone(), scene.y_ticks.doubled()),
            };
            scene = scene.with_ticks(x, y);
            layout = layout_with_style(&scene, target, text, style)?;
            doublings += 1;
        }
        if doublings > 0 {
            let mut affected = before_ids;
            affected.extend(tick_label_ids(&layout.elements, axis));
            affected.sort();
            affected.dedup();
            entries.push(OperatorLogEntry::new(
                OperatorKind::MergeTicks,
                affected,
                json!({
                    "axis": axis,
                    "doublings": doublings,
                    "ticksBefore": before_ticks.len(),
                    "ticksAfter": scene.ticks(axis).len(),
                    "stepBefore": before_ticks.step,
                    "stepAfter": scene.ticks(axis).step,
                    "gapMin": gap_min,
                }),
                MetricDelta {
                    collision_before,
                    collision_after: total_collision_area(&layout.elements),
                    ..Default::default()
                },
            ));
        }
    }
    Ok(MergeOutcome {
        scene,
        layout,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ticks::{TickStep, year_start};
    use crate::model::{assign_importance, AxisTicks, AxisType, ChartSpec, Series};

    fn yearly_spec() -> ChartSpec {
        let mut spec = ChartSpec {
            title: None,
            series: vec![Series::new(
                "s",
                (1990..=2020).map(|y| (year_start(y), ((y * 7) % 13) as f64)),
            )],
            x_axis: Default::default(),
            y_axis: Default::default(),
            annotations: vec![],
            original_size: Default::default(),
        };
        spec.x_axis.kind = AxisType::Time;
        spec.x_axis.tick_count = Some(30);
        spec
    }

    #[test]
    fn gap_rule() {
        let a = Rect::new(0.0, 0.0, 10.0, 5.0);
        assert!(adjacent_ticks_conflict(&[a, Rect::new(13.0, 0.0, 10.0, 5.0)], AxisKind::X, 4.0));
        assert!(!adjacent_ticks_conflict(&[a, Rect::new(14.0, 0.0, 10.0, 5.0)], AxisKind::X, 4.0));
        assert!(adjacent_ticks_conflict(&[Rect::new(0.0, 7.0, 10.0, 5.0), a], AxisKind::Y, 4.0));
    }

    #[test]
    fn yearly_ticks_double_at_phone_width() {
        let scene = assign_importance(&yearly_spec());
        assert_eq!(scene.x_ticks.len(), 31);
        let out = merge_ticks(
            &scene,
            Size::new(750.0, 1334.0),
            &TextMetricsModel::default(),
            &LayoutStyle::default(),
            4.0,
        )
        .unwrap();
        assert_eq!(
            out.scene.x_ticks.step,
            TickStep::Years {
                start_year: 1990,
                years: 2
            }
        );
        assert_eq!(out.scene.x_ticks.domain(), scene.x_ticks.domain());
        assert_eq!(out.entries.len(), 1);
    }

    #[test]
    fn legible_ticks_untouched() {
        let scene = assign_importance(&yearly_spec());
        let out = merge_ticks(
            &scene,
            Size::new(6307.0, 3220.0),
            &TextMetricsModel::default(),
            &LayoutStyle::default(),
            4.0,
        )
        .unwrap();
        assert!(out.entries.is_empty());
        assert_eq!(out.scene, scene);
    }

    #[test]
    fn two_doublings_keep_every_fourth() {
        let ticks = AxisTicks {
            step: TickStep::Linear {
                start: 0.0,
                step: 1.0,
            },
            intervals: 8,
        };
        let twice = ticks.doubled().doubled();
        assert_eq!(twice.values(), vec![ticks.value(0), ticks.value(4), ticks.value(8)]);
    }
}
