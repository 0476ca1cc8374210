//! Deterministic synthetic charts for sweeps, benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::spec::{Annotation, AxisSpec, AxisType, OriginalSize};
use crate::model::ticks::year_start;
use crate::model::{ChartSpec, Series};

/// Size the corpus charts were authored for; it contains every device size.
pub const AUTHORED_SIZE: OriginalSize = OriginalSize {
    width: 6307.0,
    height: 3220.0,
};

fn chart(title: &str, series: Vec<Series>) -> ChartSpec {
    ChartSpec {
        title: Some(title.to_string()),
        series,
        x_axis: AxisSpec::default(),
        y_axis: AxisSpec::default(),
        annotations: Vec::new(),
        original_size: AUTHORED_SIZE,
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// Gaussian-free random walk with `n` points.
pub fn random_walk(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = 50.0;
    (0..n)
        .map(|i| {
            y += rng.random_range(-5.0..5.0);
            (i as f64, round2(y))
        })
        .collect()
}

/// A single-series chart of `points` random-walk samples, used for timing.
pub fn perf_chart(points: usize, seed: u64) -> ChartSpec {
    chart("Throughput", vec![Series::new("walk", random_walk(points, seed))])
}

/// Ten varied charts: random walks, seasonal curves, spikes, steps, time
/// axes, annotations and a two-series chart.
pub fn synthetic_corpus() -> Vec<(String, ChartSpec)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    out.push(("walk-24".to_string(), chart("Random walk", vec![Series::new("walk", random_walk(24, 1))])));

    let seasonal: Vec<_> = (0..36)
        .map(|i| {
            let t = i as f64;
            (t, round2(20.0 + 8.0 * (t * std::f64::consts::PI / 6.0).sin() + t * 0.3))
        })
        .collect();
    out.push(("seasonal-36".to_string(), chart("Monthly sales", vec![Series::new("sales", seasonal)])));

    let spikes: Vec<_> = (0..40)
        .map(|i| (i as f64, if i % 9 == 4 { 90.0 + i as f64 } else { round2(10.0 + rng.random_range(0.0..6.0)) }))
        .collect();
    out.push(("spikes-40".to_string(), chart("Incidents", vec![Series::new("count", spikes)])));

    let steps: Vec<_> = (0..30).map(|i| (i as f64 * 2.0, ((i / 5) * 10) as f64)).collect();
    out.push(("steps-30".to_string(), chart("Tiers", vec![Series::new("tier", steps)])));

    let mut yearly = chart(
        "Population",
        vec![Series::new(
            "population",
            (1990..=2020).map(|y| (year_start(y), round2(100.0 + ((y - 1990) as f64).powf(1.3)))),
        )],
    );
    yearly.x_axis = AxisSpec {
        title: "year".into(),
        kind: AxisType::Time,
        tick_count: Some(30),
    };
    out.push(("yearly-31".to_string(), yearly));

    let mut annotated = chart("Temperature", vec![Series::new("temp", random_walk(10, 7))]);
    annotated.annotations = vec![
        Annotation {
            x: 3.0,
            y: annotated.series[0].points[3].y,
            text: "heat wave".into(),
            importance: Some(0.8),
        },
        Annotation {
            x: 7.0,
            y: annotated.series[0].points[7].y,
            text: "storm".into(),
            importance: None,
        },
    ];
    annotated.y_axis.title = "°C".into();
    out.push(("annotated-10".to_string(), annotated));

    out.push((
        "two-series-20".to_string(),
        chart(
            "Revenue vs cost",
            vec![
                Series::new("revenue", random_walk(20, 11)),
                Series::new("cost", random_walk(20, 12).into_iter().map(|(x, y)| (x, round2(y - 15.0)))),
            ],
        ),
    ));

    let dense: Vec<_> = (0..120)
        .map(|i| {
            let t = i as f64 / 10.0;
            (t, round2(t.sin() * 40.0 + (3.0 * t).cos() * 10.0))
        })
        .collect();
    out.push(("dense-120".to_string(), chart("Signal", vec![Series::new("signal", dense)])));

    out.push(("flat-12".to_string(), chart("Constant", vec![Series::new("level", (0..12).map(|i| (i as f64, 42.0)))])));

    let decimals: Vec<_> = (0..50)
        .map(|i| (i as f64 * 0.5, round2(0.001 * (i as f64 - 25.0).powi(2) + rng.random_range(0.0..0.05))))
        .collect();
    out.push(("small-values-50".to_string(), chart("Error rate", vec![Series::new("rate", decimals)])));

    out
}
