//! Merges yearly ticks that collide at phone width into two-year intervals.

use chartgen::model::{assign_importance, parse_chart_spec, AxisKind, LayoutStyle, TextMetricsModel};
use chartgen::operators::merge_ticks;
use chartgen::Size;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_chart_spec(include_str!("../fixtures/yearly_ticks.json"))?;
    let scene = assign_importance(&spec);
    for target in [Size::new(1536.0, 2048.0), Size::new(750.0, 1334.0), Size::new(400.0, 600.0)] {
        let outcome = merge_ticks(&scene, target, &TextMetricsModel::default(), &LayoutStyle::default(), 4.0)?;
        let ticks = outcome.scene.ticks(AxisKind::X);
        println!(
            "{target:>10}: {} x ticks, step {:?}, first labels {:?}",
            ticks.len(),
            ticks.step,
            ticks.labels().into_iter().take(4).collect::<Vec<_>>()
        );
    }
    Ok(())
}
