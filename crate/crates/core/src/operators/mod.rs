//! Generalization operators: jittering, elimination, simplification, tick
//! merging and the sparkline transition.

pub mod eliminate;
pub mod jitter;
pub mod log;
pub mod merge;
pub mod simplify;
pub mod transition;
mod workspace;

pub use eliminate::{eliminate, elimination_score, Elimination, EliminationConfig, EliminationWeights};
pub use jitter::{jitter_labels, AnnealingParams};
pub use log::{MetricDelta, OperatorKind, OperatorLogEntry};
pub use merge::{adjacent_ticks_conflict, merge_ticks, MergeOutcome};
pub use simplify::{feature_preserving_epsilon, simplify_indices, simplify_line};
pub use transition::{semantic_transition, transition_due, TransitionReason};
