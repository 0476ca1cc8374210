//! Helpers shared by the integration tests.
#![allow(dead_code)]

use chartgen::model::{is_conflict_pair, Element};
use chartgen::{parse_chart_spec, ChartSpec, Size};

pub const TABLET: Size = Size::new(1536.0, 2048.0);
pub const PHONE: Size = Size::new(750.0, 1334.0);
pub const WATCH: Size = Size::new(324.0, 394.0);

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture(name: &str) -> ChartSpec {
    parse_chart_spec(&fixture_text(name)).expect("fixture parses")
}

/// Label–label and label–point overlaps among visible elements, counted
/// directly from their boxes.
pub fn overlapping_pairs(elements: &[Element]) -> usize {
    let visible: Vec<&Element> = elements.iter().filter(|e| e.visible).collect();
    let mut count = 0;
    for (i, a) in visible.iter().enumerate() {
        for b in &visible[i + 1..] {
            if is_conflict_pair(a.layer, b.layer) && a.bbox.overlap_area(&b.bbox) > 0.0 {
                count += 1;
            }
        }
    }
    count
}
