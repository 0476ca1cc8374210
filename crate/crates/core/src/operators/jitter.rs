//! Label jittering: moves conflicting labels toward the emptiest diagonal
//! neighbourhood of their anchor, refined by simulated annealing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::log::{MetricDelta, OperatorKind, OperatorLogEntry};
use super::workspace::Workspace;
use crate::geometry::{Point, Rect, Size};
use crate::metrics::{quadrant_sums, QuadrantSums, QuadtreeParams, Thresholds};
use crate::model::{Direction, Element, ElementId, Placement, TextAnchor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct AnnealingParams {
    pub initial_temperature: f64,
    pub decay: f64,
    pub iterations: usize,
}

impl Default for AnnealingParams {
    fn default() -> Self {
        Self {
            initial_temperature: 1.0,
            decay: 0.9,
            iterations: 50,
        }
    }
}

/// Box of a `width` x `height` label placed in quadrant `d`, one cell
/// diagonal away from `anchor`. Text grows away from the anchor.
pub fn quadrant_box(anchor: Point, d: Direction, cell: (f64, f64), width: f64, height: f64) -> (Rect, TextAnchor) {
    let (sx, sy) = d.signs();
    let p = Point::new(anchor.x + sx * cell.0, anchor.y + sy * cell.1);
    let left = if sx > 0.0 { p.x } else { p.x - width };
    let top = if sy < 0.0 { p.y - height } else { p.y };
    (Rect::new(left, top, width, height), d.text_anchor())
}

/// Density sum charged to a placement: a default (above-centre) label
/// straddles the two northern quadrants.
fn placement_sum(sums: &QuadrantSums, p: Placement) -> f64 {
    match p {
        Placement::Default => (sums.nw + sums.ne) / 2.0,
        Placement::Quadrant(d) => sums.get(d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JitterOutcome {
    Moved,
    Stayed,
    /// No legal position exists; the label is left for elimination.
    Flagged,
}

struct Slot {
    placement: Placement,
    bbox: Rect,
    anchor: TextAnchor,
    energy: f64,
}

/// Jitters one visible label in place. `home` is its initial layout box and
/// text anchor.
pub(crate) fn jitter_one(
    ws: &mut Workspace,
    k: usize,
    home: (Rect, TextAnchor),
    params: &AnnealingParams,
    rng: &mut ChaCha8Rng,
) -> JitterOutcome {
    let (anchor_pt, layer, size, current) = {
        let e = &ws.elements[k];
        let t = e.text().expect("jitter applies to text elements");
        (e.anchor, e.layer, (e.bbox.width, e.bbox.height), t.placement)
    };
    ws.detach(k);
    let cell = ws.grid.cell_of(anchor_pt);
    let sums = quadrant_sums(&ws.grid, cell);
    let norm = 9.0 * ws.grid.max_density();
    let original = placement_sum(&sums, current);
    let canvas = ws.canvas();
    let area = (size.0 * size.1).max(f64::MIN_POSITIVE);

    let mut slots: Vec<Slot> = Vec::new();
    let mut push = |ws: &mut Workspace, placement: Placement, bbox: Rect, anchor: TextAnchor| {
        let sum = placement_sum(&sums, placement);
        if sum > original || !canvas.contains_rect(&bbox) {
            return;
        }
        let density = if norm > 0.0 { sum / norm } else { 0.0 };
        let energy = ws.overlap_with(k, layer, &bbox) / area + 0.5 * density;
        slots.push(Slot {
            placement,
            bbox,
            anchor,
            energy,
        });
    };
    push(ws, Placement::Default, home.0, home.1);
    for d in Direction::ALL {
        let (bbox, anchor) = quadrant_box(anchor_pt, d, ws.grid.cell_size, size.0, size.1);
        push(ws, Placement::Quadrant(d), bbox, anchor);
    }

    if slots.is_empty() {
        ws.attach(k);
        return JitterOutcome::Flagged;
    }

    // Greedy start: the legal quadrant with the smallest density sum.
    let mut cur = slots
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s.placement, Placement::Quadrant(_)))
        .min_by(|a, b| placement_sum(&sums, a.1.placement).total_cmp(&placement_sum(&sums, b.1.placement)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut best = cur;
    let mut temperature = params.initial_temperature;
    if slots.len() > 1 {
        for _ in 0..params.iterations {
            let mut next = rng.random_range(0..slots.len() - 1);
            if next >= cur {
                next += 1;
            }
            let delta = slots[next].energy - slots[cur].energy;
            let accept = delta <= 0.0
                || (temperature > 0.0 && rng.random::<f64>() < (-delta / temperature).exp());
            if accept {
                cur = next;
                if slots[cur].energy < slots[best].energy {
                    best = cur;
                }
            }
            temperature *= params.decay;
        }
    }

    let chosen = &slots[best];
    let moved = chosen.placement != current;
    {
        let e = &mut ws.elements[k];
        e.bbox = chosen.bbox;
        let t = e.text_mut().unwrap();
        t.placement = chosen.placement;
        t.text_anchor = chosen.anchor;
    }
    ws.attach(k);
    if moved {
        JitterOutcome::Moved
    } else {
        JitterOutcome::Stayed
    }
}

/// Jitter state carried across elimination rounds.
pub(crate) struct Jitterer {
    pub homes: Vec<Option<(Rect, TextAnchor)>>,
    pub params: AnnealingParams,
    pub rng: ChaCha8Rng,
    pub seed: u64,
}

impl Jitterer {
    pub fn new(elements: &[Element], params: AnnealingParams, seed: u64) -> Self {
        Self {
            homes: elements
                .iter()
                .map(|e| {
                    e.text()
                        .filter(|_| e.layer.is_movable_label())
                        .map(|t| (e.bbox, t.text_anchor))
                })
                .collect(),
            params,
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    /// Jitters the given labels (those still visible and in conflict) and
    /// logs the round when anything moved or was flagged.
    pub fn round(&mut self, ws: &mut Workspace, labels: &[usize], always_log: bool) -> Option<OperatorLogEntry> {
        let collision_before = ws.collision;
        let violations_before = ws.violation_count();
        let mut moved: Vec<ElementId> = Vec::new();
        let mut flagged: Vec<ElementId> = Vec::new();
        let mut attempted = 0usize;
        for &k in labels {
            let Some(home) = self.homes[k] else { continue };
            if !ws.elements[k].visible || ws.degree[k] == 0 {
                continue;
            }
            attempted += 1;
            match jitter_one(ws, k, home, &self.params, &mut self.rng) {
                JitterOutcome::Moved => moved.push(ws.elements[k].id),
                JitterOutcome::Flagged => flagged.push(ws.elements[k].id),
                JitterOutcome::Stayed => {}
            }
        }
        if !always_log && moved.is_empty() && flagged.is_empty() {
            return None;
        }
        Some(OperatorLogEntry::new(
            OperatorKind::Jitter,
            moved.clone(),
            json!({
                "seed": self.seed,
                "attempted": attempted,
                "moves": moved.len(),
                "flagged": flagged,
                "initialTemperature": self.params.initial_temperature,
                "decay": self.params.decay,
                "iterations": self.params.iterations,
            }),
            MetricDelta {
                collision_before,
                collision_after: ws.collision,
                violations_before,
                violations_after: ws.violation_count(),
            },
        ))
    }
}

/// One jitter pass over every movable label currently in conflict.
#[allow(clippy::too_many_arguments)]
pub fn jitter_labels(
    elements: Vec<Element>,
    target: Size,
    cell_px: f64,
    thresholds: &Thresholds,
    params: &AnnealingParams,
    seed: u64,
) -> (Vec<Element>, OperatorLogEntry) {
    let mut jitterer = Jitterer::new(&elements, *params, seed);
    let mut ws = Workspace::new(elements, target, cell_px, QuadtreeParams::default(), *thresholds);
    let labels: Vec<usize> = (0..ws.elements.len()).collect();
    let entry = jitterer.round(&mut ws, &labels, true).unwrap();
    (ws.into_elements(), entry)
}
