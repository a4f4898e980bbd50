//! Exact and tolerance-based convex geometry: cones, hulls, rasterized
//! regions, and the convexity certification machinery.

pub mod cone;
pub mod grid;
pub mod hull;
pub mod klee;
pub mod point;

pub use cone::ConvexCone;
pub use grid::{ball_offsets, rasterize_ball, rasterize_convex_polygon, GridIndex, GridRegion};
pub use hull::{convex_hull, hausdorff_convex, order_ccw};
pub use klee::{klee_certify, ConvexityCertificate, Verdict};
pub use point::Point;
