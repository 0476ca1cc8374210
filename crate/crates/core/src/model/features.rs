use serde::{Deserialize, Serialize};

use super::spec::Series;

/// Semantic role of a data point within its series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeaturePointKind {
    First,
    Last,
    GlobalMax,
    GlobalMin,
    LocalMax,
    LocalMin,
    Intermediate,
}

impl FeaturePointKind {
    pub fn is_endpoint(self) -> bool {
        matches!(self, Self::First | Self::Last)
    }

    pub fn is_global_extremum(self) -> bool {
        matches!(self, Self::GlobalMax | Self::GlobalMin)
    }

    pub fn is_local_extremum(self) -> bool {
        matches!(self, Self::LocalMax | Self::LocalMin)
    }
}

/// Classifies every point of a series.
///
/// Interior points are local extrema only under strict inequality with both
/// neighbours, so plateaus stay `Intermediate`. The first occurrence of the
/// global maximum/minimum among interior points is promoted; endpoints keep
/// `First`/`Last` even when they hold the global extremum.
pub fn classify_feature_points(series: &Series) -> Vec<FeaturePointKind> {
    classify_values(&series.ys().collect::<Vec<_>>())
}

pub(crate) fn classify_values(ys: &[f64]) -> Vec<FeaturePointKind> {
    let n = ys.len();
    let mut kinds = vec![FeaturePointKind::Intermediate; n];
    if n == 0 {
        return kinds;
    }
    for i in 1..n.saturating_sub(1) {
        if ys[i] > ys[i - 1] && ys[i] > ys[i + 1] {
            kinds[i] = FeaturePointKind::LocalMax;
        } else if ys[i] < ys[i - 1] && ys[i] < ys[i + 1] {
            kinds[i] = FeaturePointKind::LocalMin;
        }
    }

    let mut max_i = 0;
    let mut min_i = 0;
    for i in 1..n {
        if ys[i] > ys[max_i] {
            max_i = i;
        }
        if ys[i] < ys[min_i] {
            min_i = i;
        }
    }
    // A constant series has no extremum worth promoting.
    if ys[max_i] > ys[min_i] {
        kinds[max_i] = FeaturePointKind::GlobalMax;
        kinds[min_i] = FeaturePointKind::GlobalMin;
    }

    kinds[0] = FeaturePointKind::First;
    if n > 1 {
        kinds[n - 1] = FeaturePointKind::Last;
    }
    kinds
}
