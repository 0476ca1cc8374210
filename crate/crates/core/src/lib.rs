//! Semantic resizing of line charts with cartographic generalization.
//!
//! A [`ChartSpec`] is laid out for a target size, measured for clutter, and
//! then simplified, merged, jittered, thinned out and, at the smallest
//! sizes, turned into a sparkline until its labels are legible again.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod geometry;
pub mod metrics;
pub mod model;
pub mod operators;
pub mod pipeline;
pub mod render;
pub mod service;

pub use config::{ConfigError, EngineConfig};
pub use geometry::{Point, Rect, Size};
pub use model::{parse_chart_spec, ChartSpec};
pub use pipeline::{generalize, measure, size_sweep, GeneralizedChart, MetricsSummary, PipelineError};
pub use render::render;

/// Tablet, phone and watch sizes used throughout the evaluation suite.
pub const DEVICE_SIZES: [Size; 3] = [
    Size::new(1536.0, 2048.0),
    Size::new(750.0, 1334.0),
    Size::new(324.0, 394.0),
];
