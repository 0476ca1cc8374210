//! Clutter metrics: density grid, distances, collision area, area ratio and
//! the constraint report built from them.

pub mod collision;
pub mod constraints;
pub mod grid;
pub mod quadtree;

pub use collision::{area_ratio, layer_distances, total_collision_area, total_collision_area_of};
pub use constraints::{
    evaluate_constraints, ConflictViolation, CongestionViolation, ConstraintReport,
    ProminenceViolation, Thresholds,
};
pub use grid::{
    build_density_grid, grid_dims, min_density_quadrant, quadrant_sums, CellIndex, DensityGrid,
    QuadrantSums,
};
pub use quadtree::{Quadtree, QuadtreeParams};
