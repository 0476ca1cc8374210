//! Elimination: hides the least important, most cluttered elements until the
//! clutter constraints hold.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::jitter::{AnnealingParams, Jitterer};
use super::log::{MetricDelta, OperatorKind, OperatorLogEntry};
use super::workspace::Workspace;
use crate::geometry::Size;
use crate::metrics::{QuadtreeParams, Thresholds};
use crate::model::{Element, FeaturePointKind, LayerKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct EliminationWeights {
    pub w_imp: f64,
    pub w_dens: f64,
    pub w_ov: f64,
}

impl Default for EliminationWeights {
    fn default() -> Self {
        Self {
            w_imp: 0.5,
            w_dens: 0.3,
            w_ov: 0.2,
        }
    }
}

impl EliminationWeights {
    /// Scales the weights to sum to one. Returns `None` for negative,
    /// non-finite or all-zero weights.
    pub fn normalized(self) -> Option<Self> {
        let all = [self.w_imp, self.w_dens, self.w_ov];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return None;
        }
        let sum: f64 = all.iter().sum();
        if sum <= 0.0 {
            return None;
        }
        Some(Self {
            w_imp: self.w_imp / sum,
            w_dens: self.w_dens / sum,
            w_ov: self.w_ov / sum,
        })
    }
}

/// Removal score; higher means a better candidate for removal.
pub fn elimination_score(importance: f64, local_density: f64, overlap: f64, w: &EliminationWeights) -> f64 {
    (1.0 - importance) * w.w_imp + local_density * w.w_dens + overlap * w.w_ov
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct EliminationConfig {
    pub weights: EliminationWeights,
    /// Remove the lowest score first instead of the highest.
    pub lowest_first: bool,
    pub annealing: AnnealingParams,
    pub cell_px: f64,
    pub quadtree: QuadtreeParams,
    pub seed: u64,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        Self {
            weights: EliminationWeights::default(),
            lowest_first: false,
            annealing: AnnealingParams::default(),
            cell_px: 32.0,
            quadtree: QuadtreeParams::default(),
            seed: 0,
        }
    }
}

/// Protection level: lower tiers go first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub(crate) enum Tier {
    Free,
    /// Endpoint and global-extremum labels and markers.
    Protected,
    /// Replacement range labels.
    Range,
    Never,
}

pub(crate) fn tier(e: &Element) -> Tier {
    match e.layer {
        LayerKind::DataLine | LayerKind::AxisLine | LayerKind::ReferenceLine => Tier::Never,
        _ if e.is_range_label() => Tier::Range,
        LayerKind::PointLabel | LayerKind::DataPoint
            if e.feature().is_some_and(|f| f.is_endpoint() || f.is_global_extremum()) =>
        {
            Tier::Protected
        }
        _ => Tier::Free,
    }
}

/// Labels and markers that must be gone before a protected one of the same
/// layer may be removed.
fn is_blocker(e: &Element) -> bool {
    matches!(e.layer, LayerKind::PointLabel | LayerKind::DataPoint)
        && !e.is_range_label()
        && matches!(
            e.feature(),
            Some(FeaturePointKind::Intermediate | FeaturePointKind::LocalMax | FeaturePointKind::LocalMin)
        )
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    index: usize,
    score: f64,
    overlap: f64,
    importance: f64,
    density: f64,
}

fn candidate(ws: &Workspace, k: usize, max_density: f64, w: &EliminationWeights) -> Candidate {
    let e = &ws.elements[k];
    let density = if max_density > 0.0 {
        ws.anchor_density(k) / max_density
    } else {
        0.0
    };
    let area = e.bbox.area();
    let overlap = if area > 0.0 {
        (ws.overlap[k] / area).min(1.0)
    } else if ws.overlap[k] > 0.0 || ws.degree[k] > 0 {
        1.0
    } else {
        0.0
    };
    let importance = e.importance;
    Candidate {
        index: k,
        score: elimination_score(importance, density, overlap, w),
        overlap,
        importance,
        density,
    }
}

/// Ordering where the preferred removal compares as `Less`.
fn removal_order(a: &Candidate, b: &Candidate, lowest_first: bool, ws: &Workspace) -> Ordering {
    let by_score = if lowest_first {
        a.score.total_cmp(&b.score)
    } else {
        b.score.total_cmp(&a.score)
    };
    by_score
        .then(b.overlap.total_cmp(&a.overlap))
        .then(a.importance.total_cmp(&b.importance))
        .then(ws.elements[a.index].id.cmp(&ws.elements[b.index].id))
}

fn best(cands: impl Iterator<Item = Candidate>, lowest_first: bool, ws: &Workspace) -> Option<Candidate> {
    cands.min_by(|a, b| removal_order(a, b, lowest_first, ws))
}

/// Static removal class of every element.
struct Classes {
    tiers: Vec<Tier>,
    blockers: Vec<bool>,
}

impl Classes {
    fn new(elements: &[Element]) -> Self {
        Self {
            tiers: elements.iter().map(tier).collect(),
            blockers: elements.iter().map(is_blocker).collect(),
        }
    }
}

/// Next element to hide, or `None` when no implicated element is eligible.
fn pick(ws: &Workspace, classes: &Classes, cfg: &EliminationConfig, weights: &EliminationWeights) -> Option<(Candidate, Tier)> {
    let max_density = ws.grid.max_density();
    let congested = ws.congestion_members();
    let implicated: Vec<usize> = (0..ws.elements.len())
        .filter(|&k| ws.elements[k].visible && classes.tiers[k] != Tier::Never)
        .filter(|&k| ws.degree[k] > 0 || ws.prominence[k] || congested[k])
        .collect();
    let lowest_tier = implicated.iter().map(|&k| classes.tiers[k]).min()?;
    let in_tier = |t: Tier| {
        implicated
            .iter()
            .copied()
            .filter(move |&k| classes.tiers[k] == t)
            .map(|k| candidate(ws, k, max_density, weights))
    };
    if lowest_tier == Tier::Free {
        return best(in_tier(Tier::Free), cfg.lowest_first, ws).map(|c| (c, Tier::Free));
    }
    // Only protected elements are implicated: clear the remaining ordinary
    // labels and markers before touching them.
    let blockers = (0..ws.elements.len())
        .filter(|&k| ws.elements[k].visible && classes.blockers[k])
        .map(|k| candidate(ws, k, max_density, weights));
    if let Some(c) = best(blockers, cfg.lowest_first, ws) {
        return Some((c, Tier::Free));
    }
    best(in_tier(lowest_tier), cfg.lowest_first, ws).map(|c| (c, lowest_tier))
}

/// Result of an elimination run.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub elements: Vec<Element>,
    pub log: Vec<OperatorLogEntry>,
    /// Constraints still fail and nothing eligible is left to remove.
    pub exhausted: bool,
}

/// Alternates jittering and single removals until the constraints hold or
/// no implicated element can be removed.
pub fn eliminate(elements: Vec<Element>, target: Size, thresholds: &Thresholds, cfg: &EliminationConfig) -> Elimination {
    let weights = cfg.weights.normalized().unwrap_or_default();
    let mut jitterer = Jitterer::new(&elements, cfg.annealing, cfg.seed);
    let classes = Classes::new(&elements);
    let mut ws = Workspace::new(elements, target, cfg.cell_px, cfg.quadtree, *thresholds);
    let mut log = Vec::new();
    let mut dirty: Vec<usize> = (0..ws.elements.len())
        .filter(|&k| ws.elements[k].visible && ws.elements[k].layer.is_movable_label() && ws.degree[k] > 0)
        .collect();
    let budget = ws.elements.len() + 1;
    let mut exhausted = false;
    for _ in 0..budget {
        if !dirty.is_empty() {
            dirty.sort_unstable();
            dirty.dedup();
            let batch = std::mem::take(&mut dirty);
            log.extend(jitterer.round(&mut ws, &batch, false));
        }
        if ws.satisfied() {
            break;
        }
        ws.refresh_congestion();
        let Some((c, t)) = pick(&ws, &classes, cfg, &weights) else {
            exhausted = true;
            break;
        };
        let k = c.index;
        let partners: Vec<usize> = ws
            .partners_of(k, &ws.elements[k].bbox.clone())
            .into_iter()
            .map(|(j, _)| j)
            .collect();
        let collision_before = ws.collision;
        let violations_before = ws.violation_count();
        ws.hide(k);
        dirty.extend(
            partners
                .into_iter()
                .filter(|&j| ws.elements[j].layer.is_movable_label() && ws.degree[j] > 0),
        );
        log.push(OperatorLogEntry::new(
            OperatorKind::Eliminate,
            vec![ws.elements[k].id],
            json!({
                "layer": ws.elements[k].layer,
                "score": c.score,
                "importance": c.importance,
                "localDensity": c.density,
                "overlap": c.overlap,
                "tier": t,
                "lowestFirst": cfg.lowest_first,
            }),
            MetricDelta {
                collision_before,
                collision_after: ws.collision,
                violations_before,
                violations_after: ws.violation_count(),
            },
        ));
    }
    Elimination {
        elements: ws.into_elements(),
        log,
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Rect};
    use crate::model::{ElementId, LabelRole, Payload, Placement, TextAnchor, TextContent};
    use proptest::prelude::*;

    fn label(id: u32, r: Rect, importance: f64) -> Element {
        Element {
            id: ElementId(id),
            layer: LayerKind::Annotation,
            bbox: r,
            importance,
            payload: Payload::Text(TextContent {
                text: "note".into(),
                font_size: 10.0,
                text_anchor: TextAnchor::Start,
                role: LabelRole::Annotation,
                placement: Placement::Default,
                value: None,
                owner: None,
                feature: None,
                axis: None,
            }),
            anchor: Point::new(r.x - 4.0, r.bottom() + 4.0),
            visible: true,
        }
    }

    #[test]
    fn score_examples() {
        let w = EliminationWeights::default();
        assert_eq!(elimination_score(1.0, 0.0, 0.0, &w), 0.0);
        for w in [w, EliminationWeights { w_imp: 0.2, w_dens: 0.2, w_ov: 0.6 }] {
            assert!((elimination_score(0.0, 1.0, 1.0, &w) - 1.0).abs() < 1e-15);
        }
        let s = elimination_score(0.9, 0.5, 0.2, &EliminationWeights::default());
        assert!((s - 0.24).abs() < 1e-12);
    }

    #[test]
    fn weights_normalize() {
        let w = EliminationWeights { w_imp: 2.0, w_dens: 1.0, w_ov: 1.0 }.normalized().unwrap();
        assert_eq!((w.w_imp, w.w_dens, w.w_ov), (0.5, 0.25, 0.25));
        assert!(EliminationWeights { w_imp: -1.0, w_dens: 1.0, w_ov: 1.0 }.normalized().is_none());
        assert!(EliminationWeights { w_imp: 0.0, w_dens: 0.0, w_ov: 0.0 }.normalized().is_none());
    }

    #[test]
    fn satisfied_input_is_untouched() {
        let els = vec![label(0, Rect::new(10.0, 10.0, 20.0, 12.0), 0.5)];
        let out = eliminate(els.clone(), Size::new(200.0, 200.0), &Thresholds::default(), &EliminationConfig::default());
        assert_eq!(out.elements, els);
        assert!(out.log.is_empty());
        assert!(!out.exhausted);
    }

    #[test]
    fn identical_labels_lose_the_larger_id() {
        // Wide labels whose diagonal slots all leave the canvas, so only
        // elimination can resolve them.
        let r = Rect::new(2.0, 2.0, 58.0, 12.0);
        let els = vec![label(0, r, 0.5), label(1, r, 0.5)];
        let mut cfg = EliminationConfig::default();
        cfg.annealing.iterations = 0;
        let out = eliminate(els, Size::new(64.0, 64.0), &Thresholds::default(), &cfg);
        let hidden: Vec<_> = out.elements.iter().filter(|e| !e.visible).map(|e| e.id).collect();
        assert_eq!(hidden.len(), 1);
        // Equal score, overlap and importance: the smaller id is removed.
        assert_eq!(hidden, vec![ElementId(0)]);
    }

    #[test]
    fn lowest_first_flips_choice() {
        let r = Rect::new(2.0, 2.0, 58.0, 12.0);
        let els = vec![label(0, r, 0.9), label(1, r, 0.1)];
        let mut cfg = EliminationConfig::default();
        cfg.annealing.iterations = 0;
        let pick_hidden = |cfg: &EliminationConfig| {
            eliminate(els.clone(), Size::new(64.0, 64.0), &Thresholds::default(), cfg)
                .elements
                .iter()
                .find(|e| !e.visible)
                .map(|e| e.id)
        };
        assert_eq!(pick_hidden(&cfg), Some(ElementId(1)));
        cfg.lowest_first = true;
        assert_eq!(pick_hidden(&cfg), Some(ElementId(0)));
    }

    proptest! {
        #[test]
        fn score_is_monotone(
            imp in 0.0f64..1.0, d in 0.0f64..1.0, o in 0.0f64..1.0, step in 0.0f64..0.5,
            wi in 0.0f64..1.0, wd in 0.0f64..1.0, wo in 0.0f64..1.0,
        ) {
            let Some(w) = (EliminationWeights { w_imp: wi, w_dens: wd, w_ov: wo }).normalized() else {
                return Ok(());
            };
            let s = elimination_score(imp, d, o, &w);
            prop_assert!(elimination_score(imp, (d + step).min(1.0), o, &w) >= s);
            prop_assert!(elimination_score(imp, d, (o + step).min(1.0), &w) >= s);
            prop_assert!(elimination_score((imp - step).max(0.0), d, o, &w) >= s);
        }

        #[test]
        fn removals_never_raise_collision(
            boxes in proptest::collection::vec((0.0f64..150.0, 0.0f64..150.0, 5.0f64..40.0, 0.0f64..1.0), 1..40)
        ) {
            let els: Vec<_> = boxes.iter().enumerate()
                .map(|(k, &(x, y, w, imp))| label(k as u32, Rect::new(x, y, w, 10.0), imp))
                .collect();
            let eligible = els.len();
            let out = eliminate(els, Size::new(200.0, 200.0), &Thresholds::default(), &EliminationConfig::default());
            let removals: Vec<_> = out.log.iter().filter(|e| e.operator == OperatorKind::Eliminate).collect();
            prop_assert!(removals.len() <= eligible);
            for r in removals {
                prop_assert!(r.metrics.collision_after <= r.metrics.collision_before);
            }
        }
    }
}
