//! At watch size the chart collapses to a sparkline: axes disappear and a
//! reference line plus range labels carry the exact extremes.

use chartgen::model::LayerKind;
use chartgen::{generalize, parse_chart_spec, render, EngineConfig, Size};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_chart_spec(include_str!("../fixtures/sparkline.json"))?;
    let chart = generalize(&spec, Size::new(324.0, 394.0), &EngineConfig::default())?;
    println!("sparkline: {}", chart.sparkline);
    for e in chart.visible() {
        match e.layer {
            LayerKind::ReferenceLine => println!("reference line at y = {:.2} px", e.anchor.y),
            _ if e.is_range_label() => println!("range label {:?}", e.text().unwrap().text),
            _ => {}
        }
    }
    let out = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sparkline.svg"));
    std::fs::write(&out, render(&chart))?;
    println!("wrote {}", out.display());
    Ok(())
}
