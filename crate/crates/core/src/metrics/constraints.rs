//! The three clutter guidelines evaluated as a single report.

use serde::{Deserialize, Serialize};

use super::grid::{CellIndex, DensityGrid};
use super::quadtree::{Quadtree, QuadtreeParams};
use crate::geometry::{Rect, Size};
use crate::model::{is_conflict_pair, Element, ElementId, LayerKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct Thresholds {
    /// Highest acceptable elements-per-pixel in any grid cell.
    pub max_cell_density: f64,
    /// Smallest legible font size; text drawn smaller lacks prominence.
    pub min_font_px: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            max_cell_density: 8.0 / (32.0 * 32.0),
            min_font_px: 7.0,
        }
    }
}

impl Thresholds {
    /// Minimum area ratio for `element`: the share of the display its text
    /// would cover at the legibility floor. Non-text elements have none.
    pub fn min_area_ratio(&self, element: &Element, target: Size) -> Option<f64> {
        let text = element.text()?;
        if text.font_size <= 0.0 {
            return Some(f64::INFINITY);
        }
        let scale = self.min_font_px / text.font_size;
        Some(element.bbox.area() * scale * scale / target.area())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CongestionViolation {
    pub cell: CellIndex,
    pub density: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConflictViolation {
    pub pair: (ElementId, ElementId),
    pub overlap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProminenceViolation {
    pub id: ElementId,
    pub area_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstraintReport {
    pub congestion_violations: Vec<CongestionViolation>,
    pub conflict_violations: Vec<ConflictViolation>,
    pub prominence_violations: Vec<ProminenceViolation>,
    pub satisfied: bool,
}

impl ConstraintReport {
    pub fn violation_count(&self) -> usize {
        self.congestion_violations.len()
            + self.conflict_violations.len()
            + self.prominence_violations.len()
    }
}

/// Checks congestion, conflict and prominence for the visible elements.
/// `grid` must be built from the same elements.
pub fn evaluate_constraints(
    elements: &[Element],
    grid: &DensityGrid,
    target: Size,
    thresholds: &Thresholds,
) -> ConstraintReport {
    let congestion_violations: Vec<_> = grid
        .cells()
        .filter_map(|cell| {
            let density = grid.density(cell);
            (density > thresholds.max_cell_density).then_some(CongestionViolation { cell, density })
        })
        .collect();

    let conflict_violations = conflicts(elements);

    let prominence_violations = elements
        .iter()
        .filter(|e| e.visible)
        .filter_map(|e| {
            let floor = thresholds.min_area_ratio(e, target)?;
            let ratio = e.bbox.area() / target.area();
            (ratio < floor).then_some(ProminenceViolation {
                id: e.id,
                area_ratio: ratio,
            })
        })
        .collect::<Vec<_>>();

    let satisfied = congestion_violations.is_empty()
        && conflict_violations.is_empty()
        && prominence_violations.is_empty();
    ConstraintReport {
        congestion_violations,
        conflict_violations,
        prominence_violations,
        satisfied,
    }
}

/// Overlapping conflict pairs among visible elements, sorted by id pair.
pub(crate) fn conflicts(elements: &[Element]) -> Vec<ConflictViolation> {
    let checked: Vec<&Element> = elements
        .iter()
        .filter(|e| e.visible && (e.layer.is_conflict_label() || e.layer == LayerKind::DataPoint))
        .collect();
    let Some(region) = checked.iter().map(|e| e.bbox).reduce(|a, b| {
        let x = a.x.min(b.x);
        let y = a.y.min(b.y);
        Rect::new(x, y, a.right().max(b.right()) - x, a.bottom().max(b.bottom()) - y)
    }) else {
        return Vec::new();
    };
    let mut tree = Quadtree::new(region, QuadtreeParams::default());
    for (k, e) in checked.iter().enumerate() {
        tree.insert(k as u32, e.bbox);
    }
    let mut out = Vec::new();
    let mut hits = Vec::new();
    for a in &checked {
        tree.query_into(&a.bbox, &mut hits);
        for &h in &hits {
            let b = checked[h as usize];
            if a.id >= b.id || !is_conflict_pair(a.layer, b.layer) {
                continue;
            }
            let overlap = a.bbox.overlap_area(&b.bbox);
            if overlap > 0.0 {
                out.push(ConflictViolation {
                    pair: (a.id, b.id),
                    overlap,
                });
            }
        }
    }
    out.sort_by_key(|c| c.pair);
    out
}
