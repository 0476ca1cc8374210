//! Spatial metrics of one chart at its authored size and three device sizes,
//! before any generalization.

use chartgen::{measure, parse_chart_spec, EngineConfig, DEVICE_SIZES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_chart_spec(include_str!("../fixtures/labeled_peaks.json"))?;
    let config = EngineConfig::default();
    for size in std::iter::once(spec.original_size()).chain(DEVICE_SIZES) {
        let m = measure(&spec, size, &config)?;
        println!(
            "{size:>10}: {} elements, grid {}x{}, max density {:.5}/px², collision {:.0} px², \
             {} conflicts, {} congested cells",
            m.element_count,
            m.grid.dims.0,
            m.grid.dims.1,
            m.grid.max_density,
            m.total_collision_area,
            m.report.conflict_violations.len(),
            m.report.congestion_violations.len(),
        );
    }
    Ok(())
}
