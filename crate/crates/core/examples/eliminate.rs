//! Elimination on a chart whose value labels crowd together at phone size:
//! low-importance labels go first, feature labels stay.

use std::collections::BTreeMap;

use chartgen::metrics::Thresholds;
use chartgen::model::{assign_importance, layout_elements, parse_chart_spec, LayerKind, TextMetricsModel};
use chartgen::operators::{eliminate, EliminationConfig};
use chartgen::Size;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_chart_spec(include_str!("../fixtures/labeled_peaks.json"))?;
    let target = Size::new(750.0, 1334.0);
    let layout = layout_elements(&assign_importance(&spec), target, &TextMetricsModel::default())?;
    let outcome = eliminate(layout.elements, target, &Thresholds::default(), &EliminationConfig::default());

    let mut labels: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for e in outcome.elements.iter().filter(|e| e.layer == LayerKind::PointLabel) {
        let entry = labels.entry(format!("{:?}", e.feature().unwrap())).or_default();
        entry.0 += 1;
        entry.1 += usize::from(e.visible);
    }
    println!("{} log entries, exhausted: {}", outcome.log.len(), outcome.exhausted);
    for (feature, (total, visible)) in labels {
        println!("{feature:>12}: {visible:>3} of {total:>3} labels visible");
    }
    Ok(())
}
