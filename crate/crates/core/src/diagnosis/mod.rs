//! Openness diagnostics for momentum-map images: scene descriptors, raster
//! images of the map and its regular stratum, the region-disconnection
//! criterion, the component-condition branch, properness probes, and the
//! Weyl-chamber sweep.

pub mod diagnose;
pub mod disconnect;
pub mod properness;
pub mod raster;
pub mod scene;
pub mod sweep;

pub use diagnose::{ccf_check, diagnose, diagnose_branch, Branch, DiagnoseParams, OpennessReason, OpennessVerdict};
pub use disconnect::{disconnection_test, DisconnectionWitness};
pub use properness::{prato_properness_check, EscapeWitness};
pub use raster::{rasterize_images, RasterStats, SceneRasters};
pub use scene::{DomainSample, EscapePath, FiberOracle, GroupTag, Scene, SceneKind, SceneMeta};
pub use sweep::sweep;
