//! Region quadtree over element bounding boxes.
//!
//! Items live in the deepest node whose region fully contains them; items
//! straddling a split line stay in the parent. Anything outside the root
//! region is kept at the root so it is still found by queries.

use serde::{Deserialize, Serialize};

use crate::geometry::Rect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct QuadtreeParams {
    /// Items a leaf holds before it splits.
    pub capacity: usize,
    pub max_depth: usize,
}

impl Default for QuadtreeParams {
    fn default() -> Self {
        Self {
            capacity: 8,
            max_depth: 8,
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    region: Rect,
    depth: usize,
    items: Vec<(u32, Rect)>,
    children: Option<Box<[Node; 4]>>,
}

impl Node {
    fn new(region: Rect, depth: usize) -> Self {
        Self {
            region,
            depth,
            items: Vec::new(),
            children: None,
        }
    }

    fn child_for(&self, rect: &Rect) -> Option<usize> {
        let children = self.children.as_ref()?;
        children
            .iter()
            .position(|c| c.region.contains_rect(rect))
    }

    fn split(&mut self) {
        let r = self.region;
        let (hw, hh) = (r.width / 2.0, r.height / 2.0);
        let d = self.depth + 1;
        self.children = Some(Box::new([
            Node::new(Rect::new(r.x, r.y, hw, hh), d),
            Node::new(Rect::new(r.x + hw, r.y, r.width - hw, hh), d),
            Node::new(Rect::new(r.x, r.y + hh, hw, r.height - hh), d),
            Node::new(Rect::new(r.x + hw, r.y + hh, r.width - hw, r.height - hh), d),
        ]));
        let items = std::mem::take(&mut self.items);
        for (id, rect) in items {
            match self.child_for(&rect) {
                Some(k) => self.children.as_mut().unwrap()[k].items.push((id, rect)),
                None => self.items.push((id, rect)),
            }
        }
    }

    fn insert(&mut self, id: u32, rect: Rect, params: &QuadtreeParams) {
        if let Some(k) = self.child_for(&rect) {
            self.children.as_mut().unwrap()[k].insert(id, rect, params);
            return;
        }
        self.items.push((id, rect));
        if self.children.is_none()
            && self.items.len() > params.capacity
            && self.depth < params.max_depth
        {
            self.split();
            // Children may themselves be over capacity after the move.
            if let Some(children) = self.children.as_mut() {
                for c in children.iter_mut() {
                    if c.items.len() > params.capacity && c.depth < params.max_depth {
                        let moved = std::mem::take(&mut c.items);
                        for (id, r) in moved {
                            c.insert(id, r, params);
                        }
                    }
                }
            }
        }
    }

    fn remove(&mut self, id: u32, rect: &Rect) -> bool {
        if let Some(k) = self.child_for(rect) {
            if self.children.as_mut().unwrap()[k].remove(id, rect) {
                return true;
            }
        }
        if let Some(pos) = self.items.iter().position(|(i, _)| *i == id) {
            self.items.swap_remove(pos);
            return true;
        }
        false
    }

    fn query(&self, area: &Rect, out: &mut Vec<u32>) {
        for (id, r) in &self.items {
            if r.touches(area) {
                out.push(*id);
            }
        }
        if let Some(children) = &self.children {
            for c in children.iter() {
                if c.region.touches(area) {
                    c.query(area, out);
                }
            }
        }
    }

    fn count(&self) -> usize {
        self.items.len()
            + self
                .children
                .as_ref()
                .map_or(0, |cs| cs.iter().map(Node::count).sum())
    }

    fn max_depth(&self) -> usize {
        self.children
            .as_ref()
            .map_or(self.depth, |cs| cs.iter().map(Node::max_depth).max().unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct Quadtree {
    root: Node,
    params: QuadtreeParams,
}

impl Quadtree {
    pub fn new(region: Rect, params: QuadtreeParams) -> Self {
        Self {
            root: Node::new(region, 0),
            params,
        }
    }

    pub fn insert(&mut self, id: u32, rect: Rect) {
        let params = self.params;
        self.root.insert(id, rect, &params);
    }

    /// Removes `id`, which must have been inserted with the same `rect`.
    pub fn remove(&mut self, id: u32, rect: &Rect) -> bool {
        self.root.remove(id, rect)
    }

    /// Ids whose boxes touch `area` (closed test), in no particular order.
    pub fn query(&self, area: &Rect) -> Vec<u32> {
        let mut out = Vec::new();
        self.root.query(area, &mut out);
        out
    }

    pub fn query_into(&self, area: &Rect, out: &mut Vec<u32>) {
        out.clear();
        self.root.query(area, out);
    }

    pub fn len(&self) -> usize {
        self.root.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth(&self) -> usize {
        self.root.max_depth()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_beyond_capacity() {
        let mut qt = Quadtree::new(Rect::new(0.0, 0.0, 100.0, 100.0), QuadtreeParams::default());
        for k in 0..8 {
            qt.insert(k, Rect::new(k as f64, 1.0, 0.5, 0.5));
        }
        assert_eq!(qt.depth(), 0);
        qt.insert(8, Rect::new(60.0, 60.0, 1.0, 1.0));
        assert!(qt.depth() >= 1);
        assert_eq!(qt.len(), 9);
    }

    #[test]
    fn depth_is_capped() {
        let params = QuadtreeParams {
            capacity: 1,
            max_depth: 3,
        };
        let mut qt = Quadtree::new(Rect::new(0.0, 0.0, 64.0, 64.0), params);
        for k in 0..50 {
            qt.insert(k, Rect::new(0.1, 0.1, 0.1, 0.1));
        }
        assert_eq!(qt.depth(), 3);
        assert_eq!(qt.query(&Rect::new(0.0, 0.0, 1.0, 1.0)).len(), 50);
    }

    #[test]
    fn outside_root_still_found() {
        let mut qt = Quadtree::new(Rect::new(0.0, 0.0, 10.0, 10.0), QuadtreeParams::default());
        qt.insert(1, Rect::new(-50.0, -50.0, 5.0, 5.0));
        assert_eq!(qt.query(&Rect::new(-48.0, -48.0, 1.0, 1.0)), vec![1]);
        assert!(qt.remove(1, &Rect::new(-50.0, -50.0, 5.0, 5.0)));
        assert!(qt.is_empty());
    }

    fn rect_strategy() -> impl Strategy<Value = Rect> {
        (-10.0f64..210.0, -10.0f64..210.0, 0.0f64..40.0, 0.0f64..40.0)
            .prop_map(|(x, y, w, h)| Rect::new(x, y, w, h))
    }

    proptest! {
        #[test]
        fn every_item_found_by_intersecting_queries(
            rects in proptest::collection::vec(rect_strategy(), 0..120),
            probes in proptest::collection::vec(rect_strategy(), 1..20),
            removed in proptest::collection::vec(any::<prop::sample::Index>(), 0..30),
        ) {
            let mut qt = Quadtree::new(Rect::new(0.0, 0.0, 200.0, 200.0), QuadtreeParams::default());
            for (k, r) in rects.iter().enumerate() {
                qt.insert(k as u32, *r);
            }
            let mut live: Vec<bool> = vec![true; rects.len()];
            if !rects.is_empty() {
                for ix in &removed {
                    let k = ix.index(rects.len());
                    if live[k] {
                        prop_assert!(qt.remove(k as u32, &rects[k]));
                        live[k] = false;
                    }
                }
            }
            for p in probes.iter().chain(rects.iter()) {
                let mut got = qt.query(p);
                got.sort_unstable();
                let expected: Vec<u32> = rects
                    .iter()
                    .enumerate()
                    .filter(|(k, r)| live[*k] && r.touches(p))
                    .map(|(k, _)| k as u32)
                    .collect();
                prop_assert_eq!(got, expected);
            }
        }
    }
}
