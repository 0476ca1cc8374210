//! Moves conflicting value labels toward emptier neighbourhoods and reports
//! the collision area before and after.

use chartgen::corpus::perf_chart;
use chartgen::metrics::{build_density_grid, evaluate_constraints, grid_dims, total_collision_area, Thresholds};
use chartgen::model::Element;
use chartgen::model::{assign_importance, layout_elements, TextMetricsModel};
use chartgen::operators::{jitter_labels, AnnealingParams};
use chartgen::Size;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = Size::new(750.0, 1334.0);
    let scene = assign_importance(&perf_chart(60, 3));
    let layout = layout_elements(&scene, target, &TextMetricsModel::default())?;
    let thresholds = Thresholds::default();

    let conflicts = |elements: &[Element]| {
        let grid = build_density_grid(elements, target, grid_dims(target, 32.0));
        evaluate_constraints(elements, &grid, target, &thresholds).conflict_violations.len()
    };
    let before = conflicts(&layout.elements);
    let collision_before = total_collision_area(&layout.elements);
    let (elements, entry) = jitter_labels(layout.elements, target, 32.0, &thresholds, &AnnealingParams::default(), 7);
    let after = conflicts(&elements);

    println!("moved {} labels", entry.affected.len());
    println!(
        "conflicts {} -> {}, collision area {:.0} -> {:.0} px²",
        before,
        after,
        collision_before,
        total_collision_area(&elements)
    );
    Ok(())
}
