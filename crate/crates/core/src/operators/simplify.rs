//! Douglas-Peucker line simplification with a feature-aware tolerance.

use serde_json::json;

use super::log::{MetricDelta, OperatorKind, OperatorLogEntry};
use crate::geometry::{Point, Size};
use crate::metrics::total_collision_area;
use crate::model::{Element, FeaturePointKind, Payload};

/// Indices of the vertices kept by Douglas-Peucker at tolerance `epsilon`.
pub fn simplify_indices(points: &[Point], epsilon: f64) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    while let Some((a, b)) = stack.pop() {
        if b <= a + 1 {
            continue;
        }
        let mut best = a;
        let mut best_d = -1.0;
        for k in a + 1..b {
            let d = chord_distance(points[k], points[a], points[b]);
            if d > best_d {
                best_d = d;
                best = k;
            }
        }
        if best_d > epsilon {
            keep[best] = true;
            stack.push((best, b));
            stack.push((a, best));
        }
    }
    (0..n).filter(|&k| keep[k]).collect()
}

pub fn simplify_line(points: &[Point], epsilon: f64) -> Vec<Point> {
    simplify_indices(points, epsilon)
        .into_iter()
        .map(|k| points[k])
        .collect()
}

/// Perpendicular distance from `p` to the line through `a` and `b`, or to
/// `a` itself when the chord is degenerate.
pub fn chord_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return p.distance(a);
    }
    ((p.x - a.x) * dy - (p.y - a.y) * dx).abs() / len
}

/// Largest tolerance from the sweep `0.5, 1, 2, 4, ...` (capped at 1% of the
/// target diagonal, which is always tried last) that keeps the endpoints and
/// global extrema and at least `ceil(phi * n)` of the `n` local extrema.
/// Returns 0 when no tolerance qualifies.
pub fn feature_preserving_epsilon(
    vertices: &[Point],
    features: &[FeaturePointKind],
    target: Size,
    phi: f64,
) -> f64 {
    let eps_max = 0.01 * target.diagonal();
    let local_total = features.iter().filter(|f| f.is_local_extremum()).count();
    let needed = (phi * local_total as f64 - 1e-9).ceil().max(0.0) as usize;
    let passes = |eps: f64| {
        let kept = simplify_indices(vertices, eps);
        let mut mask = vec![false; vertices.len()];
        for k in kept {
            mask[k] = true;
        }
        let critical_ok = features
            .iter()
            .zip(&mask)
            .all(|(f, &m)| m || !(f.is_endpoint() || f.is_global_extremum()));
        let locals = features
            .iter()
            .zip(&mask)
            .filter(|(f, &m)| m && f.is_local_extremum())
            .count();
        critical_ok && locals >= needed
    };

    let mut sweep = Vec::new();
    let mut eps = 0.5;
    while eps < eps_max {
        sweep.push(eps);
        eps *= 2.0;
    }
    sweep.push(eps_max);
    sweep.into_iter().rev().find(|&e| passes(e)).unwrap_or(0.0)
}

/// Per-series tolerance chosen for a chart at `target`.
pub fn series_epsilons(elements: &[Element], features: &[Vec<FeaturePointKind>], target: Size, phi: f64) -> Vec<f64> {
    let mut out = vec![0.0; features.len()];
    for e in elements {
        if let Payload::Polyline { series, vertices } = &e.payload {
            out[*series] = feature_preserving_epsilon(vertices, &features[*series], target, phi);
        }
    }
    out
}

/// Simplifies every data line with its series tolerance. Only the polyline
/// geometry changes; markers and labels are left to the selection operators.
pub fn simplify_lines(elements: &mut [Element], epsilons: &[f64]) -> Option<OperatorLogEntry> {
    let collision_before = total_collision_area(elements);
    let mut affected = Vec::new();
    let mut dropped_vertices = 0usize;
    for e in elements.iter_mut() {
        let Payload::Polyline { series, vertices } = &mut e.payload else {
            continue;
        };
        let eps = epsilons.get(*series).copied().unwrap_or(0.0);
        let kept = simplify_indices(vertices, eps);
        if kept.len() == vertices.len() {
            continue;
        }
        dropped_vertices += vertices.len() - kept.len();
        *vertices = kept.iter().map(|&k| vertices[k]).collect();
        if let Some(hull) = crate::geometry::Rect::hull(vertices) {
            e.bbox = hull;
            e.anchor = hull.center();
        }
        affected.push(e.id);
    }
    if affected.is_empty() {
        return None;
    }
    let collision_after = total_collision_area(elements);
    Some(OperatorLogEntry::new(
        OperatorKind::Simplify,
        affected,
        json!({
            "epsilons": epsilons,
            "droppedVertices": dropped_vertices,
        }),
        MetricDelta {
            collision_before,
            collision_after,
            ..Default::default()
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::features::classify_values;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    /// Textbook recursive formulation, kept deliberately separate.
    fn reference(points: &[Point], eps: f64) -> Vec<usize> {
        fn dist(p: Point, a: Point, b: Point) -> f64 {
            let den = ((b.y - a.y).powi(2) + (b.x - a.x).powi(2)).sqrt();
            if den == 0.0 {
                return ((p.x - a.x).powi(2) + (p.y - a.y).powi(2)).sqrt();
            }
            ((b.y - a.y) * p.x - (b.x - a.x) * p.y + b.x * a.y - b.y * a.x).abs() / den
        }
        fn rec(p: &[Point], lo: usize, hi: usize, eps: f64, out: &mut Vec<usize>) {
            let mut dmax = 0.0;
            let mut idx = None;
            for k in lo + 1..hi {
                let d = dist(p[k], p[lo], p[hi]);
                if idx.is_none() || d > dmax {
                    dmax = d;
                    idx = Some(k);
                }
            }
            match idx {
                Some(k) if dmax > eps => {
                    rec(p, lo, k, eps, out);
                    rec(p, k, hi, eps, out);
                }
                _ => out.push(lo),
            }
        }
        if points.len() < 2 {
            return (0..points.len()).collect();
        }
        let mut out = Vec::new();
        rec(points, 0, points.len() - 1, eps, &mut out);
        out.push(points.len() - 1);
        out
    }

    #[test]
    fn collinear_keeps_endpoints() {
        let p = pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]);
        assert_eq!(simplify_indices(&p, 0.1), vec![0, 3]);
    }

    #[test]
    fn zero_epsilon_keeps_off_chord_points() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.3), (2.0, -0.1), (3.0, 0.0)]);
        assert_eq!(simplify_indices(&p, 0.0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn zigzag_example() {
        let p = pts(&[(0.0, 0.0), (1.0, 4.0), (2.0, 0.0), (3.0, 4.0), (4.0, 0.0)]);
        assert_eq!(simplify_indices(&p, 1.0), vec![0, 1, 2, 3, 4]);
        assert_eq!(simplify_indices(&p, 5.0), vec![0, 4]);
        assert_eq!(reference(&p, 1.0), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn straight_series_gets_max_epsilon() {
        let p = pts(&[(0.0, 0.0), (10.0, 10.0), (20.0, 20.0), (30.0, 30.0)]);
        let f = classify_values(&[0.0, 1.0, 2.0, 3.0]);
        let target = Size::new(300.0, 400.0);
        assert_eq!(feature_preserving_epsilon(&p, &f, target, 0.6), 5.0);
    }

    #[test]
    fn epsilon_stops_before_dropping_global_max() {
        // The peak at index 2 sits 3 px off the chord: tolerance 2 keeps it,
        // tolerance 4 drops it.
        let p = pts(&[(0.0, 100.0), (10.0, 100.0), (20.0, 97.0), (30.0, 100.0), (40.0, 100.0)]);
        let f = classify_values(&[0.0, 0.0, 3.0, 0.0, 0.0]);
        assert!(simplify_indices(&p, 2.0).contains(&2));
        assert!(!simplify_indices(&p, 4.0).contains(&2));
        let target = Size::new(1000.0, 1000.0);
        assert_eq!(feature_preserving_epsilon(&p, &f, target, 0.6), 2.0);
    }

    #[test]
    fn full_retention_stays_below_smallest_deviation() {
        // Local extrema deviate 1.5 px from their chords.
        let ys = [0.0, 1.5, 0.0, 1.5, 0.0, 1.5, 0.0, 10.0, 0.0];
        let p: Vec<Point> = ys.iter().enumerate().map(|(i, &y)| Point::new(i as f64 * 10.0, 100.0 - y)).collect();
        let f = classify_values(&ys);
        let eps = feature_preserving_epsilon(&p, &f, Size::new(2000.0, 2000.0), 1.0);
        assert!(eps < 1.5);
        let kept = simplify_indices(&p, eps);
        assert_eq!(kept.len(), ys.len());
    }

    fn polyline() -> impl Strategy<Value = Vec<Point>> {
        proptest::collection::vec((0.0f64..100.0, 0.0f64..100.0), 2..50)
            .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
    }

    proptest! {
        #[test]
        fn matches_reference(p in polyline(), eps in 0.0f64..30.0) {
            prop_assert_eq!(simplify_indices(&p, eps), reference(&p, eps));
        }

        #[test]
        fn subsequence_with_bounded_deviation(p in polyline(), eps in 0.0f64..30.0) {
            let kept = simplify_indices(&p, eps);
            prop_assert_eq!(kept[0], 0);
            prop_assert_eq!(*kept.last().unwrap(), p.len() - 1);
            prop_assert!(kept.windows(2).all(|w| w[0] < w[1]));
            for w in kept.windows(2) {
                for k in w[0] + 1..w[1] {
                    prop_assert!(chord_distance(p[k], p[w[0]], p[w[1]]) <= eps);
                }
            }
        }

        #[test]
        fn idempotent(p in polyline(), eps in 0.0f64..30.0) {
            let once = simplify_line(&p, eps);
            let twice = simplify_line(&once, eps);
            prop_assert_eq!(once, twice);
        }
    }
}
