//! Region-disconnection probing: does removing the singular image locally
//! split the momentum image?
//!
//! Regions (connected open sets) are approximated by probe balls around
//! image cells; the test is sound for refutation and sampled for
//! confirmation. A disconnection must reproduce at two or more probe radii
//! to count, which guards against rasterization slivers.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::defaults;
use crate::geometry::grid::{ball_offsets, GridRegion};

#[derive(Clone, Debug, Serialize)]
pub struct DisconnectionWitness {
    /// Probe center cell.
    pub cell: Vec<i64>,
    /// Probe center in point coordinates.
    pub center: Vec<f64>,
    /// Radii (in cells) at which the split reproduced.
    pub radii_cells: Vec<f64>,
    /// Component counts (image, regular) per reproducing radius.
    pub component_counts: Vec<(usize, usize)>,
}

/// Returns true (with a witness) when some probe ball has strictly more
/// regular-image components than image components at two or more radii.
pub fn disconnection_test(
    image: &GridRegion,
    regular_image: &GridRegion,
    max_probes: usize,
) -> (bool, Option<DisconnectionWitness>) {
    let dim = image.dim();
    let radii = defaults::DISCONNECTION_PROBE_RADII_CELLS;
    let offsets: Vec<Vec<Vec<i64>>> = radii.iter().map(|r| ball_offsets(dim, *r)).collect();

    // Probe at every complement cell first, then a deterministic stride of
    // image cells.
    let complement: Vec<Vec<i64>> = image
        .cells
        .iter()
        .filter(|c| !regular_image.contains_cell(c))
        .cloned()
        .collect();
    let mut probes: Vec<Vec<i64>> = Vec::new();
    let budget = max_probes.max(8);
    for c in complement.iter().take(budget / 2) {
        probes.push(c.clone());
    }
    let remaining = budget - probes.len();
    if remaining > 0 && !image.cells.is_empty() {
        let stride = (image.cells.len() / remaining).max(1);
        for (i, c) in image.cells.iter().enumerate() {
            if i % stride == 0 {
                probes.push(c.clone());
            }
        }
    }

    let img_idx = image.index();
    let reg_idx = regular_image.index();

    // Keep the strongest witness (most reproducing radii, first found).
    let mut best: Option<DisconnectionWitness> = None;
    for probe in &probes {
        let mut hits = Vec::new();
        let mut counts = Vec::new();
        for (ri, r) in radii.iter().enumerate() {
            let mut img_ball: BTreeSet<Vec<i64>> = BTreeSet::new();
            let mut reg_ball: BTreeSet<Vec<i64>> = BTreeSet::new();
            for o in &offsets[ri] {
                let cell: Vec<i64> = probe.iter().zip(o).map(|(a, b)| a + b).collect();
                if img_idx.contains(&cell) {
                    img_ball.insert(cell.clone());
                }
                if reg_idx.contains(&cell) {
                    reg_ball.insert(cell);
                }
            }
            // Components below a quarter of the probe radius are sampling
            // flakes, not split regions.
            let min_size = ((r / 4.0).floor() as usize).max(2);
            let ic = component_count(&img_ball, dim, min_size);
            let rc = component_count(&reg_ball, dim, min_size);
            if rc > ic && ic > 0 {
                hits.push(*r);
                counts.push((ic, rc));
            }
        }
        if hits.len() >= defaults::DISCONNECTION_MIN_REPRODUCTIONS
            && best.as_ref().map_or(true, |b| hits.len() > b.radii_cells.len())
        {
            let full = hits.len() == radii.len();
            best = Some(DisconnectionWitness {
                cell: probe.clone(),
                center: image.cell_center(probe),
                radii_cells: hits,
                component_counts: counts,
            });
            if full {
                break;
            }
        }
    }
    match best {
        Some(w) => (true, Some(w)),
        None => (false, None),
    }
}

fn component_count(cells: &BTreeSet<Vec<i64>>, dim: usize, min_size: usize) -> usize {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut parts = 0usize;
    for start in cells {
        if seen.contains(start) {
            continue;
        }
        let mut size = 0usize;
        let mut queue = VecDeque::new();
        queue.push_back(start.clone());
        seen.insert(start.clone());
        while let Some(c) = queue.pop_front() {
            size += 1;
            for axis in 0..dim {
                for dir in [-1i64, 1] {
                    let mut n = c.clone();
                    n[axis] += dir;
                    if cells.contains(&n) && !seen.contains(&n) {
                        seen.insert(n.clone());
                        queue.push_back(n);
                    }
                }
            }
        }
        if size >= min_size {
            parts += 1;
        }
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_rasters_never_disconnect() {
        let mut r = GridRegion::new(vec![0.0, 0.0], 1.0, true).unwrap();
        for i in 0..40i64 {
            for j in 0..40i64 {
                r.insert(vec![i, j]);
            }
        }
        let (hit, _) = disconnection_test(&r, &r, 200);
        assert!(!hit);
    }

    #[test]
    fn removed_interior_band_disconnects() {
        // Full square; regular image misses one horizontal row crossing the
        // middle. Probe balls straddling the row split in the regular image.
        let mut image = GridRegion::new(vec![0.0, 0.0], 1.0, true).unwrap();
        let mut regular = GridRegion::new(vec![0.0, 0.0], 1.0, false).unwrap();
        for i in 0..120i64 {
            for j in 0..120i64 {
                image.insert(vec![i, j]);
                if j != 60 {
                    regular.insert(vec![i, j]);
                }
            }
        }
        let (hit, w) = disconnection_test(&image, &regular, 300);
        assert!(hit);
        let w = w.unwrap();
        assert_eq!(w.cell[1], 60);
        assert!(w.radii_cells.len() >= 2);
    }

    #[test]
    fn removed_boundary_band_does_not_disconnect() {
        // The missing band runs along the edge of the image: the regular
        // part of every probe ball stays connected.
        let mut image = GridRegion::new(vec![0.0, 0.0], 1.0, true).unwrap();
        let mut regular = GridRegion::new(vec![0.0, 0.0], 1.0, false).unwrap();
        for i in 0..120i64 {
            for j in 0..120i64 {
                image.insert(vec![i, j]);
                if j != 0 {
                    regular.insert(vec![i, j]);
                }
            }
        }
        let (hit, _) = disconnection_test(&image, &regular, 300);
        assert!(!hit);
    }
}
