//! Douglas-Peucker simplification of a noisy polyline, and the largest
//! tolerance that still keeps the series' feature points.

use chartgen::geometry::{Point, Size};
use chartgen::model::{classify_feature_points, Series};
use chartgen::operators::{feature_preserving_epsilon, simplify_indices};

fn main() {
    let series = Series::new(
        "signal",
        (0..60).map(|i| {
            let t = i as f64 / 6.0;
            (i as f64, 40.0 * t.sin() + 6.0 * (5.0 * t).cos())
        }),
    );
    let vertices: Vec<Point> = series
        .points
        .iter()
        .map(|p| Point::new(10.0 * p.x, 200.0 - 2.0 * p.y))
        .collect();

    for eps in [0.5, 2.0, 8.0, 32.0] {
        let kept = simplify_indices(&vertices, eps);
        println!("epsilon {eps:>4} px keeps {:>2} of {} vertices", kept.len(), vertices.len());
    }

    let features = classify_feature_points(&series);
    let target = Size::new(600.0, 400.0);
    for phi in [1.0, 0.6, 0.2] {
        let eps = feature_preserving_epsilon(&vertices, &features, target, phi);
        let kept = simplify_indices(&vertices, eps).len();
        println!("phi {phi}: epsilon {eps} px, {kept} vertices kept");
    }
}
