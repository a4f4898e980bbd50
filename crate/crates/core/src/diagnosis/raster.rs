//! Raster images of a scene: the full momentum image and the regular-stratum
//! image, over an explicit window.
//!
//! The regular raster is the image raster minus every cell hit by a
//! singular-stratum sample; the singular image is dense along its strata by
//! construction of the scene samplers. The regular image must stay dense in
//! the image (an open dense subset); the stats record the check.

use serde::Serialize;

use crate::geometry::grid::GridRegion;
use crate::rng::CounterRng;
use crate::{Error, Result};

use super::scene::Scene;

#[derive(Clone, Debug, Serialize)]
pub struct RasterStats {
    pub accepted: usize,
    pub attempts: usize,
    pub acceptance_rate: f64,
    pub regular_fraction: f64,
    /// Every image cell is within one cell of a regular-image cell.
    pub regular_dense_in_image: bool,
    pub sparse_cells: usize,
}

#[derive(Clone, Debug)]
pub struct SceneRasters {
    pub image: GridRegion,
    pub regular_image: GridRegion,
    pub stats: RasterStats,
}

pub fn rasterize_images(
    scene: &Scene,
    box_lo: &[f64],
    box_hi: &[f64],
    h: f64,
    n_samples: usize,
    seed: u64,
) -> Result<SceneRasters> {
    let dim = scene.dim_target;
    if box_lo.len() != dim || box_hi.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: box_lo.len(),
        });
    }
    let rng = CounterRng::new(seed, 0x11);
    let mut image = GridRegion::new(box_lo.to_vec(), h, scene.meta.closed_map)?;
    let mut singular = GridRegion::new(box_lo.to_vec(), h, false)?;

    let mut accepted = 0usize;
    let mut regular_count = 0usize;
    let mut attempts = 0usize;
    let max_attempts = n_samples.saturating_mul(100).max(10_000);
    let mut i = 0u64;
    while accepted < n_samples && attempts < max_attempts {
        attempts += 1;
        let idx = i;
        i += 1;
        let Some(s) = scene.sample(&rng, idx) else {
            continue;
        };
        accepted += 1;
        if s.regular {
            regular_count += 1;
        }
        let v = scene.momentum(&s);
        let inside = v
            .0
            .iter()
            .zip(box_lo.iter().zip(box_hi))
            .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi);
        if !inside {
            continue;
        }
        let cell = image.cell_of(&v.0);
        image.insert(cell.clone());
        if !s.regular {
            singular.insert(cell);
        }
    }
    let acceptance_rate = accepted as f64 / attempts.max(1) as f64;
    if acceptance_rate < 0.01 {
        return Err(Error::SamplerMismatch {
            rate: acceptance_rate,
        });
    }

    image.fill_sampling_holes(2);
    let mut regular_image = GridRegion::new(box_lo.to_vec(), h, false)?;
    for c in &image.cells {
        if !singular.contains_cell(c) {
            regular_image.insert(c.clone());
        }
    }

    // Density of the regular image in the image: every image cell within
    // Chebyshev distance 1 of a regular cell.
    let ridx = regular_image.index();
    let mut sparse_cells = 0usize;
    let dim_i = image.dim();
    'cells: for c in &image.cells {
        let mut probe = vec![0i64; dim_i];
        for mask in 0..(3usize.pow(dim_i as u32)) {
            let mut m = mask;
            for slot in probe.iter_mut() {
                *slot = (m % 3) as i64 - 1;
                m /= 3;
            }
            let n: Vec<i64> = c.iter().zip(&probe).map(|(a, b)| a + b).collect();
            if ridx.contains(&n) {
                continue 'cells;
            }
        }
        sparse_cells += 1;
    }

    Ok(SceneRasters {
        stats: RasterStats {
            accepted,
            attempts,
            acceptance_rate,
            regular_fraction: regular_count as f64 / accepted.max(1) as f64,
            regular_dense_in_image: sparse_cells == 0,
            sparse_cells,
        },
        image,
        regular_image,
    })
}
