//! Generalizes a chart document to a target size and prints the SVG.
//!
//! Usage: `cargo run --example generalize -- [spec.json] [WIDTHxHEIGHT]`

use chartgen::{generalize, parse_chart_spec, render, EngineConfig, Size};

const DEFAULT_SPEC: &str = include_str!("../fixtures/annotated.json");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let document = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT_SPEC.to_string(),
    };
    let target = match args.next() {
        Some(size) => {
            let (w, h) = size.split_once('x').ok_or("size must look like 750x1334")?;
            Size::new(w.parse()?, h.parse()?)
        }
        None => Size::new(750.0, 1334.0),
    };

    let spec = parse_chart_spec(&document)?;
    let chart = generalize(&spec, target, &EngineConfig::default())?;
    eprintln!(
        "{} of {} elements visible, {} operator steps, satisfied: {}",
        chart.visible_count(),
        chart.elements.len(),
        chart.log.len(),
        chart.report.satisfied
    );
    print!("{}", render(&chart));
    Ok(())
}
