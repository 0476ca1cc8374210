//! Chart input, semantic importance and pixel layout.

pub mod element;
pub mod features;
pub mod layout;
pub mod scene;
pub mod spec;
pub mod text;
pub mod ticks;

pub use element::{
    default_importance, is_conflict_pair, AxisKind, Direction, Element, ElementId, LabelRole,
    LayerKind, Payload, Placement, TextAnchor, TextContent, REPLACEMENT_IMPORTANCE,
};
pub use features::{classify_feature_points, FeaturePointKind};
pub use layout::{layout_elements, layout_with_style, Layout, LayoutError, LayoutStyle, Scales};
pub use scene::{assign_importance, Mark, MarkContent, Scene};
pub use spec::{parse_chart_spec, AxisSpec, AxisType, ChartSpec, DataPoint, Series, SpecError};
pub use text::TextMetricsModel;
pub use ticks::AxisTicks;
