//! Uniform cell grid holding per-cell information density.

use serde::Serialize;

use crate::geometry::{Point, Rect, Size};
use crate::model::{Direction, Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellIndex {
    /// Column, growing east.
    pub i: usize,
    /// Row, growing south.
    pub j: usize,
}

/// `(columns, rows)` for cells of roughly `cell_px` square, at least 3x3.
pub fn grid_dims(target: Size, cell_px: f64) -> (usize, usize) {
    let n = (target.width / cell_px).ceil().max(3.0) as usize;
    let m = (target.height / cell_px).ceil().max(3.0) as usize;
    (n, m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityGrid {
    pub dims: (usize, usize),
    pub cell_size: (f64, f64),
    counts: Vec<u32>,
}

impl DensityGrid {
    pub fn empty(target: Size, dims: (usize, usize)) -> Self {
        let (n, m) = (dims.0.max(1), dims.1.max(1));
        Self {
            dims: (n, m),
            cell_size: (target.width / n as f64, target.height / m as f64),
            counts: vec![0; n * m],
        }
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_size.0 * self.cell_size.1
    }

    pub fn count(&self, c: CellIndex) -> u32 {
        self.counts[c.j * self.dims.0 + c.i]
    }

    /// Elements per pixel in a cell.
    pub fn density(&self, c: CellIndex) -> f64 {
        self.count(c) as f64 / self.cell_area()
    }

    /// Density at signed indices, `None` outside the grid.
    pub fn density_at(&self, i: i64, j: i64) -> Option<f64> {
        if i < 0 || j < 0 || i >= self.dims.0 as i64 || j >= self.dims.1 as i64 {
            None
        } else {
            Some(self.density(CellIndex {
                i: i as usize,
                j: j as usize,
            }))
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        let (n, m) = self.dims;
        (0..m).flat_map(move |j| (0..n).map(move |i| CellIndex { i, j }))
    }

    pub fn max_count(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn max_density(&self) -> f64 {
        self.max_count() as f64 / self.cell_area()
    }

    pub fn mean_density(&self) -> f64 {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total as f64 / self.counts.len() as f64 / self.cell_area()
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Cell containing `p`, clamped onto the grid.
    pub fn cell_of(&self, p: Point) -> CellIndex {
        let clamp = |v: f64, size: f64, n: usize| -> usize {
            if !(v.is_finite()) || v < 0.0 {
                0
            } else {
                ((v / size).floor() as usize).min(n - 1)
            }
        };
        CellIndex {
            i: clamp(p.x, self.cell_size.0, self.dims.0),
            j: clamp(p.y, self.cell_size.1, self.dims.1),
        }
    }

    /// Cells a box covers with positive area. Boxes without such a cell
    /// (zero-area or off-canvas) fall back to the cell holding `anchor`.
    pub fn covered_cells(&self, rect: &Rect, anchor: Point) -> Vec<CellIndex> {
        let mut out = Vec::new();
        self.any_covered_cell(rect, anchor, |c| {
            out.push(c);
            false
        });
        out
    }

    /// Visits the cells of [`covered_cells`](Self::covered_cells) in the
    /// same order, stopping at the first one for which `f` returns true.
    pub fn any_covered_cell(&self, rect: &Rect, anchor: Point, mut f: impl FnMut(CellIndex) -> bool) -> bool {
        let mut visited = false;
        if rect.width > 0.0 && rect.height > 0.0 {
            let (cw, ch) = self.cell_size;
            let (n, m) = self.dims;
            // One extra cell on each side absorbs rounding in the division.
            let i0 = ((rect.x / cw).floor().max(1.0) as usize - 1).min(n);
            let j0 = ((rect.y / ch).floor().max(1.0) as usize - 1).min(m);
            let i1 = ((rect.right() / cw).ceil().max(0.0) as usize + 1).min(n);
            let j1 = ((rect.bottom() / ch).ceil().max(0.0) as usize + 1).min(m);
            for j in j0..j1 {
                let top = j as f64 * ch;
                let h = rect.bottom().min(top + ch) - rect.y.max(top);
                if h <= 0.0 {
                    continue;
                }
                for i in i0..i1 {
                    let left = i as f64 * cw;
                    let w = rect.right().min(left + cw) - rect.x.max(left);
                    if w > 0.0 {
                        visited = true;
                        if f(CellIndex { i, j }) {
                            return true;
                        }
                    }
                }
            }
        }
        !visited && f(self.cell_of(anchor))
    }

    pub fn add(&mut self, rect: &Rect, anchor: Point) {
        self.adjust(rect, anchor, |v| v + 1);
    }

    pub fn remove(&mut self, rect: &Rect, anchor: Point) {
        self.adjust(rect, anchor, |v| v.saturating_sub(1));
    }

    fn adjust(&mut self, rect: &Rect, anchor: Point, op: impl Fn(u32) -> u32) {
        let n = self.dims.0;
        let mut counts = std::mem::take(&mut self.counts);
        self.any_covered_cell(rect, anchor, |c| {
            let slot = &mut counts[c.j * n + c.i];
            *slot = op(*slot);
            false
        });
        self.counts = counts;
    }
}

/// Counts visible elements per cell over a `target`-sized canvas.
pub fn build_density_grid(elements: &[Element], target: Size, dims: (usize, usize)) -> DensityGrid {
    let mut grid = DensityGrid::empty(target, dims);
    for e in elements.iter().filter(|e| e.visible) {
        grid.add(&e.bbox, e.anchor);
    }
    grid
}

/// Density sums of the four 3x3 blocks diagonally adjacent to a cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadrantSums {
    pub nw: f64,
    pub ne: f64,
    pub sw: f64,
    pub se: f64,
}

impl QuadrantSums {
    pub fn get(&self, d: Direction) -> f64 {
        match d {
            Direction::NW => self.nw,
            Direction::NE => self.ne,
            Direction::SW => self.sw,
            Direction::SE => self.se,
        }
    }
}

/// Quadrant sums around `anchor`; cells off the grid count as the grid's
/// maximum cell density.
pub fn quadrant_sums(grid: &DensityGrid, anchor: CellIndex) -> QuadrantSums {
    quadrant_sums_with_penalty(grid, anchor, grid.max_density())
}

pub fn quadrant_sums_with_penalty(grid: &DensityGrid, anchor: CellIndex, penalty: f64) -> QuadrantSums {
    let (i, j) = (anchor.i as i64, anchor.j as i64);
    let block = |di: i64, dj: i64| -> f64 {
        // di/dj select the block: -1 for i-3..=i-1, +1 for i+1..=i+3.
        let mut sum = 0.0;
        for y in 1..=3 {
            for x in 1..=3 {
                sum += grid
                    .density_at(i + di * x, j + dj * y)
                    .unwrap_or(penalty);
            }
        }
        sum
    };
    QuadrantSums {
        nw: block(-1, -1),
        ne: block(1, -1),
        sw: block(-1, 1),
        se: block(1, 1),
    }
}

/// Direction of the smallest sum; ties resolve in NW, NE, SW, SE order.
pub fn min_density_quadrant(sums: &QuadrantSums) -> Direction {
    let mut best = Direction::NW;
    for d in Direction::ALL {
        if sums.get(d) < sums.get(best) {
            best = d;
        }
    }
    best
}
