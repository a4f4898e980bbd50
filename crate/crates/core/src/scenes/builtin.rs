//! Built-in example scenes and discrete spaces.

use crate::diagnosis::scene::{GroupTag, Scene, SceneKind, SceneMeta};
use crate::geometry::cone::ConvexCone;
use crate::geometry::point::Point;
use crate::lgp::space::DiscreteSpace;
use crate::{Error, Result};

/// Names of the built-in scenes.
pub const BUILTIN_SCENES: &[&str] = &[
    "c2_standard",
    "prato",
    "karshon_lerman",
    "cp2_toric",
    "cylinder",
    "u2_orbit_sum",
];

/// Names of the built-in discrete spaces.
pub const BUILTIN_SPACES: &[&str] = &["circle_height_space"];

fn available() -> String {
    let mut all: Vec<&str> = BUILTIN_SCENES.to_vec();
    all.extend_from_slice(BUILTIN_SPACES);
    all.join(", ")
}

fn oracle_c2(v: &Point) -> Vec<bool> {
    // One fiber component (a torus); it is regular exactly off the axes.
    vec![v[0] > 0.0 && v[1] > 0.0]
}

fn oracle_prato(v: &Point) -> Vec<bool> {
    vec![v[0] > 0.0 && v[1] > 0.0]
}

fn oracle_karshon_lerman(v: &Point) -> Vec<bool> {
    // Connected fibers; over the open positive x-axis the fiber is the
    // singular circle of the complex chart.
    vec![!(v[1] == 0.0 && v[0] > 0.0)]
}

fn oracle_cp2(v: &Point) -> Vec<bool> {
    vec![v[0] > 0.0 && v[1] > 0.0 && v[0] + v[1] < 0.5]
}

fn oracle_cylinder(_v: &Point) -> Vec<bool> {
    vec![true]
}

fn oracle_u2(v: &Point) -> Vec<bool> {
    vec![(v[0] - v[1]).abs() > 1e-9]
}

/// Fully populated built-in scene by name.
pub fn builtin_scene(name: &str) -> Result<Scene> {
    let scene = match name {
        "c2_standard" => Scene {
            name: name.into(),
            kind: SceneKind::C2Standard,
            dim_target: 2,
            group: GroupTag::Torus,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                closed_map: true,
            },
            fixed_points: vec![Point(vec![0.0, 0.0])],
            fiber_oracle: Some(oracle_c2),
            image_box: (vec![0.0, 0.0], vec![2.0, 2.0]),
            post_scale: 1.0,
            post_offset: vec![0.0, 0.0],
        },
        "prato" => Scene {
            name: name.into(),
            kind: SceneKind::Prato,
            dim_target: 2,
            group: GroupTag::Torus,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                // Half of the quadrant-corner boundary is missing from the
                // image, so the map cannot be closed.
                closed_map: false,
            },
            fixed_points: vec![],
            fiber_oracle: Some(oracle_prato),
            image_box: (vec![0.0, 0.0], vec![2.0, 2.0]),
            post_scale: 1.0,
            post_offset: vec![0.0, 0.0],
        },
        "karshon_lerman" => Scene {
            name: name.into(),
            kind: SceneKind::KarshonLerman,
            dim_target: 2,
            group: GroupTag::Torus,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                closed_map: false,
            },
            fixed_points: vec![],
            fiber_oracle: Some(oracle_karshon_lerman),
            image_box: (vec![-1.5, -1.5], vec![1.5, 1.5]),
            post_scale: 1.0,
            post_offset: vec![0.0, 0.0],
        },
        "cp2_toric" => Scene {
            name: name.into(),
            kind: SceneKind::Cp2Toric,
            dim_target: 2,
            group: GroupTag::Torus,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                closed_map: true,
            },
            fixed_points: vec![
                Point(vec![0.0, 0.0]),
                Point(vec![0.5, 0.0]),
                Point(vec![0.0, 0.5]),
            ],
            fiber_oracle: Some(oracle_cp2),
            image_box: (vec![0.0, 0.0], vec![0.52, 0.52]),
            post_scale: 1.0,
            post_offset: vec![0.0, 0.0],
        },
        "cylinder" => Scene {
            name: name.into(),
            kind: SceneKind::Cylinder,
            dim_target: 1,
            group: GroupTag::Torus,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                closed_map: true,
            },
            fixed_points: vec![],
            fiber_oracle: Some(oracle_cylinder),
            image_box: (vec![-1.5], vec![1.5]),
            post_scale: 1.0,
            post_offset: vec![0.0],
        },
        "u2_orbit_sum" => Scene {
            name: name.into(),
            kind: SceneKind::U2OrbitSum,
            dim_target: 2,
            group: GroupTag::UnitaryN,
            meta: SceneMeta {
                fibers_connected: true,
                locally_compact: true,
                closed_map: true,
            },
            fixed_points: vec![],
            fiber_oracle: Some(oracle_u2),
            image_box: (vec![0.9, -0.1], vec![2.1, 1.1]),
            post_scale: 1.0,
            post_offset: vec![0.0, 0.0],
        },
        _ => {
            return Err(Error::UnknownScene {
                name: name.to_string(),
                available: available(),
            })
        }
    };
    Ok(scene)
}

/// The canonical locally-fiber-connectedness counterexample: a cycle with
/// the height function. Heights are mirrored exactly so paired levels agree
/// bit-for-bit; every generic level carries two one-point fibers, and every
/// neighborhood of an extremum meets both branches of a nearby level.
///
/// Cones are correct by construction (full lines at generic vertices,
/// half-lines at the extrema), so the local convexity data holds while the
/// locally-fiber-connected condition fails exactly at the two extrema.
pub fn circle_height_space(n: usize) -> DiscreteSpace {
    assert!(n >= 8 && n % 2 == 0, "need an even cycle length >= 8");
    let mut f = Vec::with_capacity(n);
    for k in 0..n {
        let k_eff = k.min(n - k);
        f.push(Point(vec![
            (2.0 * std::f64::consts::PI * k_eff as f64 / n as f64).cos(),
        ]));
    }
    let cones: Vec<ConvexCone> = (0..n)
        .map(|k| {
            if k == 0 {
                ConvexCone {
                    vertex: f[0].clone(),
                    subspace: vec![],
                    generators: vec![vec![-1.0]],
                }
            } else if k == n / 2 {
                ConvexCone {
                    vertex: f[n / 2].clone(),
                    subspace: vec![],
                    generators: vec![vec![1.0]],
                }
            } else {
                ConvexCone {
                    vertex: f[k].clone(),
                    subspace: vec![vec![1.0]],
                    generators: vec![],
                }
            }
        })
        .collect();
    DiscreteSpace {
        vertices: n,
        edges: (0..n).map(|k| (k, (k + 1) % n)).collect(),
        f,
        cones: Some(cones),
        closed: true,
        eps: 1e-9,
    }
}

/// Look up a built-in discrete space by name.
pub fn builtin_space(name: &str) -> Result<DiscreteSpace> {
    match name {
        "circle_height_space" => Ok(circle_height_space(64)),
        _ => Err(Error::UnknownScene {
            name: name.to_string(),
            available: available(),
        }),
    }
}
