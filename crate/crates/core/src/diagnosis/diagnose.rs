//! The openness-onto-image diagnosis pipeline.
//!
//! Connected-fiber scenes are decided purely by the region-disconnection
//! test on the regular-stratum image. Scenes without the connected-fiber
//! property additionally need local compactness of the image (metadata) and
//! the connected-component fiber condition from the scene's oracle.

use serde::Serialize;

use crate::rng::CounterRng;
use crate::{Error, Result};

use super::disconnect::{disconnection_test, DisconnectionWitness};
use super::raster::{rasterize_images, RasterStats, SceneRasters};
use super::scene::Scene;
use crate::geometry::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OpennessReason {
    DisconnectionFound,
    CcfViolated,
    NotLocallyCompact,
    Clean,
}

#[derive(Clone, Debug, Serialize)]
pub struct OpennessVerdict {
    pub open_onto_image: bool,
    pub reason: OpennessReason,
    pub witness: Option<DisconnectionWitness>,
    pub raster_stats: RasterStats,
}

#[derive(Clone, Copy, Debug)]
pub struct DiagnoseParams {
    pub h: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub max_probes: usize,
    pub ccf_probes: usize,
}

impl Default for DiagnoseParams {
    fn default() -> Self {
        DiagnoseParams {
            h: 1.0 / 64.0,
            n_samples: 200_000,
            seed: 1,
            max_probes: 600,
            ccf_probes: 200,
        }
    }
}

/// Which theorem branch decides the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Follow the scene metadata.
    Auto,
    /// Force the connected-fibers criterion.
    ForceConnectedFibers,
    /// Force the disconnected-fibers criterion (local compactness + CCF).
    ForceComponentCondition,
}

pub fn diagnose(scene: &Scene, params: &DiagnoseParams) -> Result<OpennessVerdict> {
    diagnose_branch(scene, params, Branch::Auto)
}

pub fn diagnose_branch(
    scene: &Scene,
    params: &DiagnoseParams,
    branch: Branch,
) -> Result<OpennessVerdict> {
    let (lo, hi) = scene.image_box.clone();
    let rasters: SceneRasters =
        rasterize_images(scene, &lo, &hi, params.h, params.n_samples, params.seed)?;

    let connected_fibers = match branch {
        Branch::Auto => scene.meta.fibers_connected,
        Branch::ForceConnectedFibers => true,
        Branch::ForceComponentCondition => false,
    };

    if !connected_fibers {
        if !scene.meta.locally_compact {
            return Ok(OpennessVerdict {
                open_onto_image: false,
                reason: OpennessReason::NotLocallyCompact,
                witness: None,
                raster_stats: rasters.stats,
            });
        }
        let (ccf_ok, _) = ccf_check(scene, params.ccf_probes, params.seed)?;
        if !ccf_ok {
            return Ok(OpennessVerdict {
                open_onto_image: false,
                reason: OpennessReason::CcfViolated,
                witness: None,
                raster_stats: rasters.stats,
            });
        }
    }

    let (disconnects, witness) =
        disconnection_test(&rasters.image, &rasters.regular_image, params.max_probes);
    if disconnects {
        return Ok(OpennessVerdict {
            open_onto_image: false,
            reason: OpennessReason::DisconnectionFound,
            witness,
            raster_stats: rasters.stats,
        });
    }
    Ok(OpennessVerdict {
        open_onto_image: true,
        reason: OpennessReason::Clean,
        witness: None,
        raster_stats: rasters.stats,
    })
}

/// Connected-component fiber condition, decided by the scene's oracle on
/// probed momentum values: whenever one fiber component meets the regular
/// stratum, every component must.
pub fn ccf_check(
    scene: &Scene,
    n_value_probes: usize,
    seed: u64,
) -> Result<(bool, Option<Point>)> {
    let Some(oracle) = scene.fiber_oracle else {
        return Err(Error::MissingFiberOracle);
    };
    let rng = CounterRng::new(seed, 0x2c);
    let mut probed = 0usize;
    let mut i = 0u64;
    let budget = (n_value_probes as u64).saturating_mul(100).max(1000);
    while probed < n_value_probes && i < budget {
        let idx = i;
        i += 1;
        let Some(s) = scene.sample(&rng, idx) else {
            continue;
        };
        probed += 1;
        let v = scene.momentum(&s);
        let comps = oracle(&v);
        let any_regular = comps.iter().any(|c| *c);
        let all_regular = comps.iter().all(|c| *c);
        if any_regular && !all_regular {
            return Ok((false, Some(v)));
        }
    }
    Ok((true, None))
}
