//! Generalizes the synthetic corpus from its authored size down to a watch
//! and prints one summary row per chart and size.

use chartgen::corpus::synthetic_corpus;
use chartgen::{generalize, EngineConfig, DEVICE_SIZES};

fn main() {
    let config = EngineConfig::default();
    println!(
        "{:<16} {:>10} {:>8} {:>9} {:>9} {:>6} {:>9}",
        "chart", "size", "visible", "conflicts", "satisfied", "ops", "ms"
    );
    for (name, spec) in synthetic_corpus() {
        let sizes = std::iter::once(spec.original_size()).chain(DEVICE_SIZES);
        for size in sizes {
            let chart = generalize(&spec, size, &config).expect("corpus chart generalizes");
            println!(
                "{:<16} {:>10} {:>8} {:>9} {:>9} {:>6} {:>9.2}",
                name,
                size.to_string(),
                chart.visible_count(),
                chart.report.conflict_violations.len(),
                chart.report.satisfied,
                chart.log.len(),
                chart.elapsed_ms,
            );
        }
    }
}
