//! Generalizes one chart for several targets in parallel and reports how
//! much of it survives at each size.

use chartgen::{parse_chart_spec, size_sweep, EngineConfig, Size, DEVICE_SIZES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_chart_spec(include_str!("../fixtures/yearly_ticks.json"))?;
    let mut targets = vec![spec.original_size()];
    targets.extend(DEVICE_SIZES);
    targets.push(Size::new(1.0, 1.0));

    for (target, result) in targets.iter().zip(size_sweep(&spec, &targets, &EngineConfig::default())) {
        match result {
            Ok(chart) => println!(
                "{target:>10}: {:>3} visible, sparkline: {:<5}, operators: {}",
                chart.visible_count(),
                chart.sparkline,
                chart
                    .log
                    .iter()
                    .map(|e| format!("{:?}", e.operator))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            Err(e) => println!("{target:>10}: error: {e}"),
        }
    }
    Ok(())
}
