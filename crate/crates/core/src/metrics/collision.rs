//! Pairwise distance, collision area and area ratio.

use super::quadtree::{Quadtree, QuadtreeParams};
use crate::geometry::{Rect, Size};
use crate::model::{Element, ElementId, LayerKind};

/// Centre-to-centre distance for every unordered pair of visible elements
/// in `layer`.
pub fn layer_distances(elements: &[Element], layer: LayerKind) -> Vec<((ElementId, ElementId), f64)> {
    let members: Vec<&Element> = elements
        .iter()
        .filter(|e| e.visible && e.layer == layer)
        .collect();
    let mut out = Vec::with_capacity(members.len() * members.len().saturating_sub(1) / 2);
    for (k, a) in members.iter().enumerate() {
        for b in &members[k + 1..] {
            out.push(((a.id, b.id), a.bbox.center().distance(b.bbox.center())));
        }
    }
    out
}

/// Summed overlap over all ordered pairs of visible elements, so each
/// overlapping pair contributes twice.
pub fn total_collision_area(elements: &[Element]) -> f64 {
    let rects: Vec<Rect> = elements
        .iter()
        .filter(|e| e.visible)
        .map(|e| e.bbox)
        .collect();
    total_collision_area_of(&rects)
}

/// Ordered double sum of overlap areas. Candidates come from a quadtree, but
/// terms are accumulated in plain index order so the result is bit-identical
/// to the naive double loop.
pub fn total_collision_area_of(rects: &[Rect]) -> f64 {
    let Some(region) = rects.iter().copied().reduce(|a, b| {
        let x = a.x.min(b.x);
        let y = a.y.min(b.y);
        Rect::new(x, y, a.right().max(b.right()) - x, a.bottom().max(b.bottom()) - y)
    }) else {
        return 0.0;
    };
    let mut tree = Quadtree::new(region, QuadtreeParams::default());
    for (k, r) in rects.iter().enumerate() {
        tree.insert(k as u32, *r);
    }
    let mut sum = 0.0;
    let mut hits = Vec::new();
    for (i, r) in rects.iter().enumerate() {
        tree.query_into(r, &mut hits);
        hits.sort_unstable();
        for &j in &hits {
            if j as usize != i {
                sum += r.overlap_area(&rects[j as usize]);
            }
        }
    }
    sum
}

/// Share of the display covered by an element's box.
pub fn area_ratio(element: &Element, target: Size) -> f64 {
    element.bbox.area() / target.area()
}
