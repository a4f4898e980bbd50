//! mck: machine checks for convexity and openness of momentum-map images.
//!
//! The crate certifies convexity of rasterized sets (Klee-style: closed +
//! connected + locally convex), evaluates torus-action local models and their
//! polyhedral cones, runs the local-to-global pipeline on finite discrete
//! spaces (fiber quotient, quotient metric, geodesic straightness), and
//! diagnoses openness-onto-image of momentum maps from the geometry of the
//! regular-stratum image. Built-in scenes and classical oracles (Schur–Horn
//! diagonals, toric fixed-point hulls, 2x2 Horn intervals) provide the
//! reference experiments.
//!
//! All randomness is counter-based from an explicit seed; every operation is
//! a pure function of its inputs, so results are reproducible byte-for-byte.

pub mod defaults;
pub mod diagnosis;
pub mod error;
pub mod geometry;
pub mod lgp;
pub mod linalg;
pub mod local_model;
pub mod lp;
pub mod rng;
pub mod scenes;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
