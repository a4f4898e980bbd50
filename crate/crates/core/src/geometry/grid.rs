//! Axis-aligned rasterizations of bounded subsets of R^n.
//!
//! Cells are closed boxes `origin + h*[c, c+1]` keyed by integer vectors.
//! Connectivity is face connectivity (no diagonals), which keeps
//! "disconnects a region" conservative and matches segment traversal.
//!
//! Segment traversal visits every cell in which the segment spends positive
//! length. Cells touched only at a single point (an exact corner crossing)
//! are not charged; otherwise diagonal boundaries rasterized at matching
//! resolution would always fail the convexity segment test.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::point::{self, Point};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRegion {
    pub origin: Vec<f64>,
    pub h: f64,
    pub cells: BTreeSet<Vec<i64>>,
    /// Metadata: whether the represented set is closed in its bounding box.
    pub closed: bool,
}

impl GridRegion {
    pub fn new(origin: Vec<f64>, h: f64, closed: bool) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::NonFiniteValue(h));
        }
        Ok(GridRegion {
            origin,
            h,
            cells: BTreeSet::new(),
            closed,
        })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn insert(&mut self, cell: Vec<i64>) {
        debug_assert_eq!(cell.len(), self.dim());
        self.cells.insert(cell);
    }

    pub fn contains_cell(&self, cell: &[i64]) -> bool {
        self.cells.contains(cell)
    }

    pub fn cell_of(&self, p: &[f64]) -> Vec<i64> {
        p.iter()
            .zip(&self.origin)
            .map(|(x, o)| ((x - o) / self.h).floor() as i64)
            .collect()
    }

    pub fn cell_center(&self, cell: &[i64]) -> Vec<f64> {
        cell.iter()
            .zip(&self.origin)
            .map(|(c, o)| o + (*c as f64 + 0.5) * self.h)
            .collect()
    }

    /// Cell-index bounding box of the occupied set.
    pub fn bbox(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.cells.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for c in &self.cells {
            for (i, v) in c.iter().enumerate() {
                lo[i] = lo[i].min(*v);
                hi[i] = hi[i].max(*v);
            }
        }
        Some((lo, hi))
    }

    pub fn point_in_bbox(&self, p: &[f64]) -> bool {
        let Some((lo, hi)) = self.bbox() else {
            return false;
        };
        p.iter().enumerate().all(|(i, x)| {
            let a = self.origin[i] + lo[i] as f64 * self.h;
            let b = self.origin[i] + (hi[i] + 1) as f64 * self.h;
            *x >= a && *x <= b
        })
    }

    /// Dense occupancy index over the bounding box for hot loops.
    pub fn index(&self) -> GridIndex {
        GridIndex::new(self)
    }

    pub fn from_points<'a, I: IntoIterator<Item = &'a Vec<f64>>>(
        origin: Vec<f64>,
        h: f64,
        points: I,
        closed: bool,
    ) -> Result<Self> {
        let mut r = GridRegion::new(origin, h, closed)?;
        for p in points {
            let c = r.cell_of(p);
            r.cells.insert(c);
        }
        Ok(r)
    }

    /// Restrict to cells inside the window `[lo, hi]` (in point coordinates).
    pub fn clipped_to_window(&self, lo: &[f64], hi: &[f64]) -> GridRegion {
        let mut out = GridRegion {
            origin: self.origin.clone(),
            h: self.h,
            cells: BTreeSet::new(),
            closed: self.closed,
        };
        'cell: for c in &self.cells {
            let center = self.cell_center(c);
            for i in 0..self.dim() {
                if center[i] < lo[i] || center[i] > hi[i] {
                    continue 'cell;
                }
            }
            out.cells.insert(c.clone());
        }
        out
    }

    /// Fill unoccupied cells all of whose face neighbors are occupied.
    /// Closes isolated sampling holes; a genuine excluded set of any
    /// full-cell thickness is never filled.
    pub fn fill_sampling_holes(&mut self, passes: usize) {
        let dim = self.dim();
        for _ in 0..passes {
            let mut to_fill: Vec<Vec<i64>> = Vec::new();
            let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
            for c in &self.cells {
                for (axis, dir) in neighbor_steps(dim) {
                    let mut n = c.clone();
                    n[axis] += dir;
                    if !self.cells.contains(&n) {
                        candidates.insert(n);
                    }
                }
            }
            for cand in candidates {
                let filled = neighbor_steps(dim).all(|(axis, dir)| {
                    let mut n = cand.clone();
                    n[axis] += dir;
                    self.cells.contains(&n)
                });
                if filled {
                    to_fill.push(cand);
                }
            }
            if to_fill.is_empty() {
                break;
            }
            for c in to_fill {
                self.cells.insert(c);
            }
        }
    }

    /// Cells in which the segment [x, y] spends positive length, in
    /// traversal order.
    pub fn segment_cells(&self, x: &[f64], y: &[f64]) -> Vec<Vec<i64>> {
        segment_cells_raw(&self.origin, self.h, x, y)
    }

    /// True iff every cell traversed by [x, y] is occupied.
    /// Precondition: both endpoints inside the bounding box.
    pub fn segment_in_region(&self, x: &[f64], y: &[f64]) -> Result<bool> {
        for p in [x, y] {
            if !self.point_in_bbox(p) {
                return Err(Error::OutsideBoundingBox(p.to_vec()));
            }
        }
        Ok(self
            .segment_cells(x, y)
            .iter()
            .all(|c| self.cells.contains(c)))
    }

    /// Violations of local convexity at neighborhood `radius` (in point
    /// units): an occupied cell is reported when two cells of its radius
    /// ball are joined by a center segment that strays more than one cell
    /// ring from the occupied set without leaving the ball.
    ///
    /// The one-ring tolerance is what makes the check exact on rasters of
    /// convex sets: an occupied cell's center lies within half a cell
    /// diagonal of the represented set, so a center segment between two
    /// occupied cells of a convex set never leaves its one-ring dilation.
    /// A genuine reflex corner is still flagged, since segments around it
    /// cut at least two cells deep at the default radius.
    pub fn is_locally_convex(&self, radius: f64) -> Result<Vec<Vec<i64>>> {
        if radius < 2.0 * self.h {
            return Err(Error::RadiusTooSmall {
                radius,
                min: 2.0 * self.h,
            });
        }
        let dim = self.dim();
        let idx = self.index();
        let offsets = ball_offsets(dim, radius / self.h);
        let ring = chebyshev_ring(dim);
        let mut violations = Vec::new();

        for c in &self.cells {
            let mut ball_occ: Vec<Vec<i64>> = Vec::with_capacity(offsets.len());
            let mut full = true;
            for o in &offsets {
                let cell: Vec<i64> = c.iter().zip(o).map(|(a, b)| a + b).collect();
                if idx.contains(&cell) {
                    ball_occ.push(cell);
                } else {
                    full = false;
                }
            }
            if full {
                // Every cell of the ball is occupied; any restricted segment
                // check passes.
                continue;
            }
            let in_ball = |cell: &[i64]| -> bool {
                let mut s = 0.0;
                for (a, b) in cell.iter().zip(c.iter()) {
                    let d = (*a - *b) as f64;
                    s += d * d;
                }
                s.sqrt() * self.h <= radius + 1e-12
            };
            let near_occupied = |cell: &[i64]| -> bool {
                ring.iter().any(|o| {
                    let n: Vec<i64> = cell.iter().zip(o).map(|(a, b)| a + b).collect();
                    idx.contains(&n)
                })
            };
            'pairs: for i in 0..ball_occ.len() {
                for j in (i + 1)..ball_occ.len() {
                    let a = self.cell_center(&ball_occ[i]);
                    let b = self.cell_center(&ball_occ[j]);
                    for cell in self.segment_cells(&a, &b) {
                        if in_ball(&cell) && !near_occupied(&cell) {
                            violations.push(c.clone());
                            break 'pairs;
                        }
                    }
                }
            }
        }
        Ok(violations)
    }

    /// Face-connected components, deterministic order (by smallest cell).
    pub fn region_components(&self) -> Vec<GridRegion> {
        let dim = self.dim();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut parts = Vec::new();
        for start in &self.cells {
            if seen.contains(start) {
                continue;
            }
            let mut comp = GridRegion {
                origin: self.origin.clone(),
                h: self.h,
                cells: BTreeSet::new(),
                closed: self.closed,
            };
            let mut queue = VecDeque::new();
            queue.push_back(start.clone());
            seen.insert(start.clone());
            while let Some(c) = queue.pop_front() {
                for (axis, dir) in neighbor_steps(dim) {
                    let mut n = c.clone();
                    n[axis] += dir;
                    if self.cells.contains(&n) && !seen.contains(&n) {
                        seen.insert(n.clone());
                        queue.push_back(n);
                    }
                }
                comp.cells.insert(c);
            }
            parts.push(comp);
        }
        parts
    }

    /// Polygonal path from `x` to `y` inside the region, if they share a
    /// component: BFS cell path, then greedy straightening (merge waypoints
    /// while the segment test passes). `None` across components.
    pub fn polygonal_connect(&self, x: &[f64], y: &[f64]) -> Result<Option<Vec<Point>>> {
        let cx = self.cell_of(x);
        let cy = self.cell_of(y);
        for (p, c) in [(x, &cx), (y, &cy)] {
            if !self.cells.contains(c) {
                let _ = p;
                return Err(Error::UnoccupiedEndpoint(c.clone()));
            }
        }
        let Some(cell_path) = self.bfs_path(&cx, &cy) else {
            return Ok(None);
        };

        let mut waypoints: Vec<Vec<f64>> = Vec::with_capacity(cell_path.len() + 2);
        waypoints.push(x.to_vec());
        for c in &cell_path[1..cell_path.len().saturating_sub(1)] {
            waypoints.push(self.cell_center(c));
        }
        waypoints.push(y.to_vec());

        let mut path = vec![Point(waypoints[0].clone())];
        let mut i = 0usize;
        while i + 1 < waypoints.len() {
            let mut best = i + 1;
            for j in (i + 2)..waypoints.len() {
                if self.segment_in_region(&waypoints[i], &waypoints[j])? {
                    best = j;
                }
            }
            path.push(Point(waypoints[best].clone()));
            i = best;
        }
        Ok(Some(path))
    }

    fn bfs_path(&self, from: &[i64], to: &[i64]) -> Option<Vec<Vec<i64>>> {
        let dim = self.dim();
        let mut prev: std::collections::BTreeMap<Vec<i64>, Vec<i64>> = Default::default();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(from.to_vec());
        seen.insert(from.to_vec());
        while let Some(c) = queue.pop_front() {
            if c == to {
                let mut path = vec![c.clone()];
                let mut cur = c;
                while let Some(p) = prev.get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                path.reverse();
                return Some(path);
            }
            for (axis, dir) in neighbor_steps(dim) {
                let mut n = c.clone();
                n[axis] += dir;
                if self.cells.contains(&n) && !seen.contains(&n) {
                    seen.insert(n.clone());
                    prev.insert(n.clone(), c.clone());
                    queue.push_back(n);
                }
            }
        }
        None
    }
}

/// Deterministic neighbor iteration: axis-major, minus before plus.
fn neighbor_steps(dim: usize) -> impl Iterator<Item = (usize, i64)> {
    (0..dim).flat_map(|axis| [(axis, -1i64), (axis, 1i64)])
}

/// Offsets of the closed Chebyshev-1 ring (3^dim cells, self included).
fn chebyshev_ring(dim: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * 3);
        for v in &out {
            for d in [0i64, -1, 1] {
                let mut w = v.clone();
                w.push(d);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Integer offsets whose centers lie within `radius_cells` cells.
pub fn ball_offsets(dim: usize, radius_cells: f64) -> Vec<Vec<i64>> {
    let r = radius_cells.floor() as i64;
    let r2 = radius_cells * radius_cells + 1e-9;
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        let s: f64 = cur.iter().map(|v| (*v * *v) as f64).sum();
        if s <= r2 {
            out.push(cur.clone());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            cur[k] += 1;
            if cur[k] <= r {
                break;
            }
            cur[k] = -r;
            k += 1;
        }
    }
}

fn segment_cells_raw(origin: &[f64], h: f64, x: &[f64], y: &[f64]) -> Vec<Vec<i64>> {
    let dim = origin.len();
    let d: Vec<f64> = point::sub(y, x);
    if d.iter().all(|v| *v == 0.0) {
        return vec![cell_of_raw(origin, h, x)];
    }

    // Crossing parameters of every gridline between x and y, per axis.
    let mut ts: Vec<f64> = vec![0.0, 1.0];
    for i in 0..dim {
        if d[i] == 0.0 {
            continue;
        }
        let a = (x[i] - origin[i]) / h;
        let b = (y[i] - origin[i]) / h;
        let (klo, khi) = if a < b {
            (a.ceil() as i64, b.floor() as i64)
        } else {
            (b.ceil() as i64, a.floor() as i64)
        };
        for k in klo..=khi {
            let t = (k as f64 - a) / (b - a);
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
        }
    }
    ts.sort_by(|p, q| p.partial_cmp(q).unwrap());

    const EPS: f64 = 1e-12;
    let mut cells: Vec<Vec<i64>> = Vec::new();
    for w in ts.windows(2) {
        if w[1] - w[0] <= EPS {
            continue; // zero-length interval (corner crossing)
        }
        let tm = 0.5 * (w[0] + w[1]);
        let p: Vec<f64> = (0..dim).map(|i| x[i] + tm * d[i]).collect();
        let c = cell_of_raw(origin, h, &p);
        if cells.last() != Some(&c) {
            cells.push(c);
        }
    }
    if cells.is_empty() {
        cells.push(cell_of_raw(origin, h, x));
    }
    cells
}

fn cell_of_raw(origin: &[f64], h: f64, p: &[f64]) -> Vec<i64> {
    p.iter()
        .zip(origin)
        .map(|(x, o)| ((x - o) / h).floor() as i64)
        .collect()
}

/// Dense bitmap occupancy over a region's bounding box.
pub struct GridIndex {
    min: Vec<i64>,
    dims: Vec<usize>,
    bits: Vec<bool>,
}

impl GridIndex {
    fn new(r: &GridRegion) -> GridIndex {
        let Some((lo, hi)) = r.bbox() else {
            return GridIndex {
                min: vec![],
                dims: vec![],
                bits: vec![],
            };
        };
        let dims: Vec<usize> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| (b - a + 1) as usize)
            .collect();
        let total: usize = dims.iter().product();
        let mut bits = vec![false; total];
        for c in &r.cells {
            let mut idx = 0usize;
            for i in 0..dims.len() {
                idx = idx * dims[i] + (c[i] - lo[i]) as usize;
            }
            bits[idx] = true;
        }
        GridIndex {
            min: lo,
            dims,
            bits,
        }
    }

    pub fn contains(&self, cell: &[i64]) -> bool {
        if self.dims.is_empty() {
            return false;
        }
        let mut idx = 0usize;
        for i in 0..self.dims.len() {
            let o = cell[i] - self.min[i];
            if o < 0 || o as usize >= self.dims[i] {
                return false;
            }
            idx = idx * self.dims[i] + o as usize;
        }
        self.bits[idx]
    }
}

/// Raster of a convex polygon (2D): every cell whose closed box meets the
/// polygon. Together with positive-length segment traversal this makes the
/// raster of any convex set pass the segment test between any two of its
/// points.
pub fn rasterize_convex_polygon(
    origin: Vec<f64>,
    h: f64,
    hull_vertices: &[Point],
    closed: bool,
) -> Result<GridRegion> {
    if hull_vertices.is_empty() {
        return Err(Error::EmptyInput("polygon needs vertices"));
    }
    if hull_vertices[0].dim() != 2 {
        return Err(Error::UnsupportedDimension(hull_vertices[0].dim()));
    }
    let poly = super::hull::order_ccw(hull_vertices);
    let mut r = GridRegion::new(origin, h, closed)?;

    let lo_i: Vec<i64> = (0..2)
        .map(|i| {
            let m = poly.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
            ((m - r.origin[i]) / h).floor() as i64 - 1
        })
        .collect();
    let hi_i: Vec<i64> = (0..2)
        .map(|i| {
            let m = poly.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
            ((m - r.origin[i]) / h).floor() as i64 + 1
        })
        .collect();

    for cx in lo_i[0]..=hi_i[0] {
        for cy in lo_i[1]..=hi_i[1] {
            let cell = vec![cx, cy];
            if cell_meets_polygon(&r, &cell, &poly) {
                r.cells.insert(cell);
            }
        }
    }
    Ok(r)
}

fn cell_meets_polygon(r: &GridRegion, cell: &[i64], poly_ccw: &[Point]) -> bool {
    let x0 = r.origin[0] + cell[0] as f64 * r.h;
    let y0 = r.origin[1] + cell[1] as f64 * r.h;
    let x1 = x0 + r.h;
    let y1 = y0 + r.h;
    let corners = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];

    // Cell corner inside polygon?
    for c in &corners {
        if super::hull::depth_in_convex_polygon(poly_ccw, c) >= -1e-12 {
            return true;
        }
    }
    // Polygon vertex inside cell?
    for p in poly_ccw {
        if p[0] >= x0 - 1e-12 && p[0] <= x1 + 1e-12 && p[1] >= y0 - 1e-12 && p[1] <= y1 + 1e-12 {
            return true;
        }
    }
    // Edge-edge intersection?
    let cell_edges = [
        ([x0, y0], [x1, y0]),
        ([x1, y0], [x1, y1]),
        ([x1, y1], [x0, y1]),
        ([x0, y1], [x0, y0]),
    ];
    let k = poly_ccw.len();
    for i in 0..k {
        let a = &poly_ccw[i].0;
        let b = &poly_ccw[(i + 1) % k].0;
        for (p, q) in &cell_edges {
            if segments_intersect(a, b, p, q) {
                return true;
            }
        }
    }
    false
}

fn segments_intersect(a: &[f64], b: &[f64], p: &[f64], q: &[f64]) -> bool {
    let d = |o: &[f64], u: &[f64], v: &[f64]| (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0]);
    let d1 = d(a, b, p);
    let d2 = d(a, b, q);
    let d3 = d(p, q, a);
    let d4 = d(p, q, b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |o: &[f64], u: &[f64], w: &[f64]| {
        d(o, u, w).abs() < 1e-12
            && w[0] >= o[0].min(u[0]) - 1e-12
            && w[0] <= o[0].max(u[0]) + 1e-12
            && w[1] >= o[1].min(u[1]) - 1e-12
            && w[1] <= o[1].max(u[1]) + 1e-12
    };
    on(a, b, p) || on(a, b, q) || on(p, q, a) || on(p, q, b)
}

/// Raster of a Euclidean ball: every cell whose closed box meets the ball.
pub fn rasterize_ball(
    origin: Vec<f64>,
    h: f64,
    center: &[f64],
    radius: f64,
    closed: bool,
) -> Result<GridRegion> {
    let dim = center.len();
    let mut r = GridRegion::new(origin, h, closed)?;
    let lo: Vec<i64> = (0..dim)
        .map(|i| ((center[i] - radius - r.origin[i]) / h).floor() as i64 - 1)
        .collect();
    let hi: Vec<i64> = (0..dim)
        .map(|i| ((center[i] + radius - r.origin[i]) / h).floor() as i64 + 1)
        .collect();
    let mut cur = lo.clone();
    loop {
        // Distance from center to the cell box.
        let mut s = 0.0;
        for i in 0..dim {
            let a = r.origin[i] + cur[i] as f64 * h;
            let b = a + h;
            let c = center[i].clamp(a, b);
            s += (center[i] - c) * (center[i] - c);
        }
        if s.sqrt() <= radius {
            r.cells.insert(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == dim {
                return Ok(r);
            }
            cur[k] += 1;
            if cur[k] <= hi[k] {
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}
