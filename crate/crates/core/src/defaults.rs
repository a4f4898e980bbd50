//! Central tolerances and resolution knobs.
//!
//! Every grid-scale check in this crate is relative to a resolution
//! parameter; the constants here are the single place those defaults live.

/// Nonnegativity tolerance for cone feasibility in float mode.
/// Exact rational mode uses 0 and is the reference in tests.
pub const CONE_FEASIBILITY_TOL: f64 = 1e-9;

/// Local-convexity neighborhood radius as a multiple of cell size.
/// "Arbitrarily small neighborhood" is approximated at a fixed multiple of
/// the raster resolution; results are reported relative to it.
pub const LOCAL_CONVEXITY_RADIUS_CELLS: f64 = 4.0;

/// Straight-line tolerance for quotient geodesics, as a multiple of the
/// companion raster cell size.
pub const GEODESIC_TOL_CELLS: f64 = 2.0;

/// Fiber bucket width as a fraction of the companion image raster cell.
pub const FIBER_BUCKET_CELL_FRACTION: f64 = 0.5;

/// Probe-ball radii (in cells) for the region-disconnection test. A
/// disconnection must reproduce at two or more radii to count.
pub const DISCONNECTION_PROBE_RADII_CELLS: [f64; 3] = [8.0, 16.0, 32.0];
pub const DISCONNECTION_MIN_REPRODUCTIONS: usize = 2;

/// Hermitian asymmetry threshold for the Weyl-chamber sweep.
pub const HERMITIAN_ASYMMETRY_TOL: f64 = 1e-12;

/// Trace-identity tolerance for spectral experiments (exact in real
/// arithmetic; allows only rounding noise).
pub const TRACE_IDENTITY_TOL: f64 = 1e-12;

/// Fiber-component clustering: single-linkage gap as a multiple of the
/// median nearest-neighbor distance among fiber samples.
pub const FIBER_CLUSTER_GAP_FACTOR: f64 = 5.0;

/// Minimum sample budget for neighborhood-coverage checks.
pub const MIN_COVERAGE_SAMPLES: usize = 100;

/// Local-model sampling box: [-1,1]^dim_t1 x [0,1]^n_weights.
pub const MODEL_BETA_HALF_WIDTH: f64 = 1.0;
pub const MODEL_NORM_MAX: f64 = 1.0;
pub const MODEL_DEFAULT_SAMPLES: usize = 100_000;

/// Coverage tests mark a required cell as covered when an image point lies
/// within `0.55 * sqrt(d) * max_nn_gap` of its center (d = intrinsic cone
/// dimension). The factor dominates the covering radius of any sample
/// lattice whose nearest-neighbor gap is max_nn_gap.
pub const COVER_GAP_FACTOR: f64 = 0.55;

/// Fraction of the observed directional extent used as the vertex
/// neighborhood radius in graph-ball coverage checks.
pub const BALL_COVER_EXTENT_FRACTION: f64 = 0.5;
