//! Mutable spatial bookkeeping shared by jittering and elimination.
//!
//! Keeps the density grid, a quadtree of visible boxes and per-element
//! conflict overlap in sync as labels move or disappear, so each step costs
//! time proportional to the neighbourhood it touches.

use crate::geometry::{Rect, Size};
use crate::metrics::{grid_dims, CellIndex, total_collision_area, DensityGrid, Quadtree, QuadtreeParams, Thresholds};
use crate::model::{is_conflict_pair, Element, LayerKind};

pub(crate) struct Workspace {
    pub elements: Vec<Element>,
    pub target: Size,
    pub grid: DensityGrid,
    pub thresholds: Thresholds,
    tree: Quadtree,
    /// Summed overlap with visible conflict partners.
    pub overlap: Vec<f64>,
    pub degree: Vec<u32>,
    pub conflicts: usize,
    pub congested: usize,
    pub prominence: Vec<bool>,
    pub prominence_count: usize,
    near_congestion: Vec<bool>,
    /// Grid cell of each element's anchor; anchors never move.
    anchor_cell: Vec<CellIndex>,
    flipped_cells: Vec<CellIndex>,
    /// Elements whose density is charged at their anchor cell rather than
    /// their box (degenerate or off-canvas boxes).
    anchored: Vec<usize>,
    /// Ordered-pair collision area over all visible elements.
    pub collision: f64,
    scratch: Vec<u32>,
}

impl Workspace {
    pub fn new(elements: Vec<Element>, target: Size, cell_px: f64, quadtree: QuadtreeParams, thresholds: Thresholds) -> Self {
        let n = elements.len();
        let region = Rect::new(0.0, 0.0, target.width, target.height);
        let mut ws = Self {
            grid: DensityGrid::empty(target, grid_dims(target, cell_px)),
            tree: Quadtree::new(region, quadtree),
            overlap: vec![0.0; n],
            degree: vec![0; n],
            conflicts: 0,
            congested: 0,
            prominence: vec![false; n],
            prominence_count: 0,
            near_congestion: vec![false; n],
            anchor_cell: Vec::new(),
            flipped_cells: Vec::new(),
            anchored: Vec::new(),
            collision: total_collision_area(&elements),
            thresholds,
            target,
            elements,
            scratch: Vec::new(),
        };
        for k in 0..n {
            let e = &ws.elements[k];
            if !e.visible {
                continue;
            }
            ws.grid.add(&e.bbox, e.anchor);
            ws.tree.insert(k as u32, e.bbox);
            if let Some(floor) = thresholds.min_area_ratio(e, target) {
                if e.bbox.area() / target.area() < floor {
                    ws.prominence[k] = true;
                    ws.prominence_count += 1;
                }
            }
        }
        ws.congested = ws
            .grid
            .cells()
            .filter(|&c| ws.grid.density(c) > thresholds.max_cell_density)
            .count();
        ws.anchor_cell = ws.elements.iter().map(|e| ws.grid.cell_of(e.anchor)).collect();
        let canvas = ws.canvas();
        for k in 0..n {
            let e = &ws.elements[k];
            if !(e.bbox.width > 0.0 && e.bbox.height > 0.0 && canvas.contains_rect(&e.bbox)) {
                ws.anchored.push(k);
            }
            ws.near_congestion[k] = e.visible && ws.in_congested_cell(k);
        }
        for k in 0..n {
            if !ws.elements[k].visible {
                continue;
            }
            for (j, ov) in ws.partners_of(k, &ws.elements[k].bbox.clone()) {
                ws.overlap[k] += ov;
                ws.degree[k] += 1;
                if j > k {
                    ws.conflicts += 1;
                }
            }
        }
        ws
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }

    pub fn satisfied(&self) -> bool {
        self.conflicts == 0 && self.congested == 0 && self.prominence_count == 0
    }

    pub fn violation_count(&self) -> usize {
        self.conflicts + self.congested + self.prominence_count
    }

    pub fn canvas(&self) -> Rect {
        Rect::new(0.0, 0.0, self.target.width, self.target.height)
    }

    /// Visible conflict partners of element `k` if it occupied `bbox`.
    pub fn partners_of(&self, k: usize, bbox: &Rect) -> Vec<(usize, f64)> {
        let layer = self.elements[k].layer;
        let mut out: Vec<(usize, f64)> = self
            .tree
            .query(bbox)
            .into_iter()
            .map(|j| j as usize)
            .filter(|&j| j != k && is_conflict_pair(layer, self.elements[j].layer))
            .filter_map(|j| {
                let ov = bbox.overlap_area(&self.elements[j].bbox);
                (ov > 0.0).then_some((j, ov))
            })
            .collect();
        out.sort_by_key(|p| p.0);
        out
    }

    /// Summed overlap of `bbox` with visible conflict partners of a `layer`
    /// element, ignoring element `skip`.
    pub fn overlap_with(&mut self, skip: usize, layer: LayerKind, bbox: &Rect) -> f64 {
        let mut hits = std::mem::take(&mut self.scratch);
        self.tree.query_into(bbox, &mut hits);
        hits.sort_unstable();
        let sum = hits
            .iter()
            .map(|&j| j as usize)
            .filter(|&j| j != skip && is_conflict_pair(layer, self.elements[j].layer))
            .map(|j| bbox.overlap_area(&self.elements[j].bbox))
            .sum();
        self.scratch = hits;
        sum
    }

    fn all_overlap(&mut self, k: usize) -> f64 {
        let bbox = self.elements[k].bbox;
        let mut hits = std::mem::take(&mut self.scratch);
        self.tree.query_into(&bbox, &mut hits);
        hits.sort_unstable();
        let sum = hits
            .iter()
            .filter(|&&j| j as usize != k)
            .map(|&j| bbox.overlap_area(&self.elements[j as usize].bbox))
            .sum();
        self.scratch = hits;
        sum
    }

    fn grid_update(&mut self, k: usize, add: bool) {
        let (bbox, anchor) = (self.elements[k].bbox, self.elements[k].anchor);
        let cells = self.grid.covered_cells(&bbox, anchor);
        let tau = self.thresholds.max_cell_density;
        let before: Vec<bool> = cells.iter().map(|&c| self.grid.density(c) > tau).collect();
        if add {
            self.grid.add(&bbox, anchor);
        } else {
            self.grid.remove(&bbox, anchor);
        }
        for (&c, was) in cells.iter().zip(before) {
            let now = self.grid.density(c) > tau;
            if now != was {
                self.flipped_cells.push(c);
                if now {
                    self.congested += 1;
                } else {
                    self.congested -= 1;
                }
            }
        }
    }

    /// Takes a visible element out of every index without hiding it.
    pub fn detach(&mut self, k: usize) {
        let bbox = self.elements[k].bbox;
        self.grid_update(k, false);
        for (j, ov) in self.partners_of(k, &bbox) {
            self.overlap[j] -= ov;
            self.degree[j] -= 1;
            if self.degree[j] == 0 {
                self.overlap[j] = 0.0;
            }
            self.conflicts -= 1;
        }
        self.overlap[k] = 0.0;
        self.degree[k] = 0;
        self.collision = (self.collision - 2.0 * self.all_overlap(k)).max(0.0);
        self.tree.remove(k as u32, &bbox);
    }

    /// Re-inserts an element detached earlier, at its current box.
    pub fn attach(&mut self, k: usize) {
        let bbox = self.elements[k].bbox;
        self.tree.insert(k as u32, bbox);
        self.grid_update(k, true);
        for (j, ov) in self.partners_of(k, &bbox) {
            self.overlap[j] += ov;
            self.degree[j] += 1;
            self.overlap[k] += ov;
            self.degree[k] += 1;
            self.conflicts += 1;
        }
        self.collision += 2.0 * self.all_overlap(k);
        self.near_congestion[k] = self.in_congested_cell(k);
    }

    pub fn hide(&mut self, k: usize) {
        if !self.elements[k].visible {
            return;
        }
        self.detach(k);
        self.elements[k].visible = false;
        if self.prominence[k] {
            self.prominence[k] = false;
            self.prominence_count -= 1;
        }
    }

    /// Per-element "touches a congested cell" flags, current after
    /// [`refresh_congestion`](Self::refresh_congestion). Hidden elements may
    /// carry stale flags.
    pub fn congestion_members(&self) -> &[bool] {
        &self.near_congestion
    }

    /// Re-derives the congestion flags of elements around cells whose
    /// congestion status flipped since the last refresh.
    pub fn refresh_congestion(&mut self) {
        if self.flipped_cells.is_empty() {
            return;
        }
        let mut cells = std::mem::take(&mut self.flipped_cells);
        cells.sort_unstable();
        cells.dedup();
        let (cw, ch) = self.grid.cell_size;
        let mut hits = Vec::new();
        let mut touched: Vec<usize> = self.anchored.clone();
        for c in cells {
            let cell = Rect::new(c.i as f64 * cw, c.j as f64 * ch, cw, ch);
            self.tree.query_into(&cell, &mut hits);
            touched.extend(hits.iter().map(|&j| j as usize));
        }
        for k in touched {
            self.near_congestion[k] = self.elements[k].visible && self.in_congested_cell(k);
        }
    }

    /// Density of the cell holding element `k`'s anchor.
    pub fn anchor_density(&self, k: usize) -> f64 {
        self.grid.density(self.anchor_cell[k])
    }

    /// Whether element `k` touches a congested cell.
    pub fn in_congested_cell(&self, k: usize) -> bool {
        if self.congested == 0 {
            return false;
        }
        let e = &self.elements[k];
        let tau = self.thresholds.max_cell_density;
        self.grid
            .any_covered_cell(&e.bbox, e.anchor, |c| self.grid.density(c) > tau)
    }
}
