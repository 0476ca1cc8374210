//! End-to-end generalization: layout, clutter evaluation and the operator
//! loop.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::EngineConfig;
use crate::geometry::Size;
use crate::metrics::{
    build_density_grid, evaluate_constraints, grid_dims, total_collision_area, ConstraintReport,
};
use crate::model::layout::LayoutWarning;
use crate::model::{
    assign_importance, layout_with_style, ChartSpec, Element, LayoutError, LayoutStyle, SpecError,
    TextMetricsModel,
};
use crate::operators::simplify::{series_epsilons, simplify_lines};
use crate::operators::transition::TransitionReason;
use crate::operators::{eliminate, merge_ticks, semantic_transition, transition_due, OperatorLogEntry};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid chart: {0}")]
    Spec(#[from] SpecError),
    #[error("target {0} is smaller than 2x2 px")]
    TargetTooSmall(Size),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// A chart adapted to one target size.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneralizedChart {
    pub target: Size,
    pub elements: Vec<Element>,
    pub log: Vec<OperatorLogEntry>,
    pub report: ConstraintReport,
    /// Constraints still fail and nothing eligible was left to remove.
    pub exhausted: bool,
    /// The chart collapsed to its sparkline form.
    pub sparkline: bool,
    pub warnings: Vec<LayoutWarning>,
    /// Wall time of the run; left out of the serialized form so output stays
    /// reproducible.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl GeneralizedChart {
    pub fn visible(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(|e| e.visible)
    }

    pub fn visible_count(&self) -> usize {
        self.visible().count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }
}

fn check_target(target: Size) -> Result<(), PipelineError> {
    if target.width.is_finite() && target.height.is_finite() && target.width >= 2.0 && target.height >= 2.0 {
        Ok(())
    } else {
        Err(PipelineError::TargetTooSmall(target))
    }
}

fn text_model(config: &EngineConfig) -> TextMetricsModel {
    TextMetricsModel::default().with_font_size(config.font_size)
}

fn evaluate(elements: &[Element], target: Size, config: &EngineConfig) -> ConstraintReport {
    let grid = build_density_grid(elements, target, grid_dims(target, config.cell_px));
    evaluate_constraints(elements, &grid, target, &config.thresholds)
}

/// Adapts `spec` to `target`. Deterministic for fixed inputs.
pub fn generalize(spec: &ChartSpec, target: Size, config: &EngineConfig) -> Result<GeneralizedChart, PipelineError> {
    let started = Instant::now();
    spec.validate()?;
    check_target(target)?;
    let text = text_model(config);
    let style = LayoutStyle::default();
    let scene = assign_importance(spec);
    let layout = layout_with_style(&scene, target, &text, &style)?;
    let mut plot = layout.scales.plot;
    let warnings = layout.warnings.clone();
    let mut elements = layout.elements;
    let mut report = evaluate(&elements, target, config);
    let mut log: Vec<OperatorLogEntry> = Vec::new();
    let mut sparkline = false;

    let done = |elements, log, report: ConstraintReport, sparkline| {
        let exhausted = !report.satisfied;
        GeneralizedChart {
            target,
            elements,
            log,
            report,
            exhausted,
            sparkline,
            warnings: warnings.clone(),
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    };

    if report.satisfied && transition_due(&elements, target, config.sparkline_area).is_none() {
        return Ok(done(elements, log, report, false));
    }

    for pass in 0..config.max_passes {
        let log_len = log.len();
        if pass == 0 {
            // Cheap global reductions first: line simplification, then
            // tick merging (which re-lays the chart out, so the same
            // tolerances are applied again to the new geometry).
            let eps = series_epsilons(&elements, &scene.features, target, config.phi);
            log.extend(simplify_lines(&mut elements, &eps));
            let merged = merge_ticks(&scene, target, &text, &style, config.gap_min)?;
            if !merged.entries.is_empty() {
                log.extend(merged.entries);
                plot = merged.layout.scales.plot;
                elements = merged.layout.elements;
                log.extend(simplify_lines(&mut elements, &eps));
            }
        }
        let seed = config.seed.wrapping_add(pass as u64);
        let outcome = eliminate(elements, target, &config.thresholds, &config.elimination(seed));
        elements = outcome.elements;
        log.extend(outcome.log);
        if let Some(reason) = transition_due(&elements, target, config.sparkline_area) {
            let (next, entry) = semantic_transition(elements, target, plot, reason, &text, style.marker_radius);
            elements = next;
            if entry.is_some() {
                sparkline |= reason == TransitionReason::Sparkline;
            }
            log.extend(entry);
        }
        report = evaluate(&elements, target, config);
        if report.satisfied || log.len() == log_len {
            break;
        }
    }
    Ok(done(elements, log, report, sparkline))
}

/// Generalizes `spec` for each target independently, in parallel.
pub fn size_sweep(
    spec: &ChartSpec,
    targets: &[Size],
    config: &EngineConfig,
) -> Vec<Result<GeneralizedChart, PipelineError>> {
    targets
        .par_iter()
        .map(|&t| generalize(spec, t, config))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridSummary {
    pub dims: (usize, usize),
    pub cell_size: (f64, f64),
    pub max_density: f64,
    pub mean_density: f64,
}

/// Clutter metrics of the unmodified layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricsSummary {
    pub target: Size,
    pub element_count: usize,
    pub grid: GridSummary,
    pub total_collision_area: f64,
    /// Summed area ratio of the visible elements of each layer.
    pub area_ratios: BTreeMap<&'static str, f64>,
    pub report: ConstraintReport,
}

/// Measures the plain layout at `target` without running any operator.
pub fn measure(spec: &ChartSpec, target: Size, config: &EngineConfig) -> Result<MetricsSummary, PipelineError> {
    spec.validate()?;
    check_target(target)?;
    let scene = assign_importance(spec);
    let layout = layout_with_style(&scene, target, &text_model(config), &LayoutStyle::default())?;
    let elements = layout.elements;
    let grid = build_density_grid(&elements, target, grid_dims(target, config.cell_px));
    let report = evaluate_constraints(&elements, &grid, target, &config.thresholds);
    let mut area_ratios = BTreeMap::new();
    for e in elements.iter().filter(|e| e.visible) {
        *area_ratios.entry(e.layer.name()).or_insert(0.0) += crate::metrics::area_ratio(e, target);
    }
    Ok(MetricsSummary {
        target,
        element_count: elements.len(),
        grid: GridSummary {
            dims: grid.dims,
            cell_size: grid.cell_size,
            max_density: grid.max_density(),
            mean_density: grid.mean_density(),
        },
        total_collision_area: total_collision_area(&elements),
        area_ratios,
        report,
    })
}
