//! Built-in example scenes, classical oracles, and discretization bridges.

pub mod builtin;
pub mod discretize;
pub mod experiments;

pub use builtin::{
    builtin_scene, builtin_space, circle_height_space, BUILTIN_SCENES, BUILTIN_SPACES,
};
pub use discretize::{discretize_scene, glued_model_space, DiscretizeParams};
pub use experiments::{
    horn_interval_experiment, schur_horn_experiment, toric_polytope_experiment, ExperimentReport,
    WeylOrbitHull,
};
