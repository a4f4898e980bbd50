//! Symplectic example scenes: an analytic momentum descriptor over a
//! bounded sample domain, a regular-stratum indicator, singular-stratum
//! samplers, and escape probes.
//!
//! The regular indicator is analytic per scene (the orbit-dimension drop is
//! known in closed form for every built-in); nothing is estimated from the
//! samples. Random draws almost surely miss the singular strata, so each
//! sampler emits a fixed fraction of exact stratum samples; those are what
//! make the singular image visible at raster scale.

use serde::{Deserialize, Serialize};

use crate::geometry::cone::ConvexCone;
use crate::geometry::point::Point;
use crate::linalg::{conjugated_diag, hermitian_eigenvalues, CMat};
use crate::rng::CounterRng;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupTag {
    Torus,
    #[serde(rename = "u(n)")]
    UnitaryN,
}

/// Scene-level facts that are proved analytically, never inferred from
/// samples.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SceneMeta {
    pub fibers_connected: bool,
    pub locally_compact: bool,
    pub closed_map: bool,
}

/// A sample of the scene domain: chart index plus chart coordinates. The
/// regular flag is the analytic indicator evaluated at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSample {
    pub chart: usize,
    pub coords: Vec<f64>,
    pub regular: bool,
}

/// Fiber-component oracle: for a momentum value, one entry per declared
/// fiber component, true when that component meets the regular stratum.
pub type FiberOracle = fn(&Point) -> Vec<bool>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SceneKind {
    /// Standard torus action on the full complex plane pair.
    C2Standard,
    /// Complex plane pair minus the closed unit bidisk.
    Prato,
    /// Two glued charts whose union image is the plane minus the origin.
    KarshonLerman,
    /// Projective plane with the standard torus action (Delzant triangle).
    Cp2Toric,
    /// Cotangent circle: momentum is the fiber coordinate.
    Cylinder,
    /// Sum of two unitary coadjoint orbits, projected to the Weyl chamber.
    U2OrbitSum,
}

/// One escape probe: a sequence of accepted samples leaving every compact
/// (growing norm or shrinking distance to a removed set).
#[derive(Clone, Debug)]
pub struct EscapePath {
    pub label: String,
    pub stages: Vec<DomainSample>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub kind: SceneKind,
    pub dim_target: usize,
    pub group: GroupTag,
    pub meta: SceneMeta,
    pub fixed_points: Vec<Point>,
    pub fiber_oracle: Option<FiberOracle>,
    /// Default raster window in the target space.
    pub image_box: (Vec<f64>, Vec<f64>),
    /// Optional affine post-composition of the momentum descriptor.
    pub post_scale: f64,
    pub post_offset: Vec<f64>,
}

const STRATUM_PERIOD: u64 = 20;

impl Scene {
    /// Draw the i-th domain sample; `None` when the draw is rejected.
    pub fn sample(&self, rng: &CounterRng, i: u64) -> Option<DomainSample> {
        let s = match self.kind {
            SceneKind::C2Standard => self.sample_c2(rng, i, false)?,
            SceneKind::Prato => self.sample_c2(rng, i, true)?,
            SceneKind::KarshonLerman => self.sample_kl(rng, i)?,
            SceneKind::Cp2Toric => self.sample_cp2(rng, i)?,
            SceneKind::Cylinder => {
                let theta = rng.range_at(3 * i, 0.0, 2.0 * std::f64::consts::PI);
                let p = rng.range_at(3 * i + 1, -1.5, 1.5);
                DomainSample {
                    chart: 0,
                    coords: vec![theta, p],
                    regular: true,
                }
            }
            SceneKind::U2OrbitSum => self.sample_u2(rng, i),
        };
        Some(s)
    }

    fn sample_c2(&self, rng: &CounterRng, i: u64, reject_bidisk: bool) -> Option<DomainSample> {
        let half = if reject_bidisk { 2.2 } else { 2.0 };
        let ctr = 6 * i;
        let role = i % STRATUM_PERIOD;
        let coords = if role == 0 {
            // Stratum z1 = 0 (for the punctured scene, |z2| must exceed 1).
            let r_lo = if reject_bidisk { 1.05 } else { 0.0 };
            let r = rng.range_at(ctr, r_lo, 2.0);
            let phi = rng.range_at(ctr + 1, 0.0, 2.0 * std::f64::consts::PI);
            vec![0.0, 0.0, r * phi.cos(), r * phi.sin()]
        } else if role == 1 {
            let r_lo = if reject_bidisk { 1.05 } else { 0.0 };
            let r = rng.range_at(ctr, r_lo, 2.0);
            let phi = rng.range_at(ctr + 1, 0.0, 2.0 * std::f64::consts::PI);
            vec![r * phi.cos(), r * phi.sin(), 0.0, 0.0]
        } else if role == 2 && !reject_bidisk {
            // The fixed point.
            vec![0.0, 0.0, 0.0, 0.0]
        } else {
            (0..4).map(|j| rng.range_at(ctr + j, -half, half)).collect()
        };
        if reject_bidisk {
            let z1 = coords[0] * coords[0] + coords[1] * coords[1];
            let z2 = coords[2] * coords[2] + coords[3] * coords[3];
            if z1 <= 1.0 && z2 <= 1.0 {
                return None; // inside the removed bidisk
            }
        }
        let regular = (coords[0] != 0.0 || coords[1] != 0.0)
            && (coords[2] != 0.0 || coords[3] != 0.0);
        Some(DomainSample {
            chart: 0,
            coords,
            regular,
        })
    }

    fn sample_kl(&self, rng: &CounterRng, i: u64) -> Option<DomainSample> {
        let ctr = 6 * i;
        if i % 2 == 0 {
            // Plane chart: the removed origin and positive axis have measure
            // zero and are never hit by generic draws.
            let x = rng.range_at(ctr, -1.6, 1.6);
            let y = rng.range_at(ctr + 1, -1.6, 1.6);
            if (y == 0.0 && x >= 0.0) || (x == 0.0 && y == 0.0) {
                return None;
            }
            Some(DomainSample {
                chart: 0,
                coords: vec![x, y],
                regular: true,
            })
        } else {
            // Complex chart over {z != 0}; the w = 0 stratum is singular and
            // maps onto the open positive x-axis.
            let role = i % (2 * STRATUM_PERIOD);
            let coords = if role == 1 {
                let r = rng.range_at(ctr, 0.05, 1.75);
                let phi = rng.range_at(ctr + 1, 0.0, 2.0 * std::f64::consts::PI);
                vec![r * phi.cos(), r * phi.sin(), 0.0, 0.0]
            } else {
                let mut c: Vec<f64> =
                    (0..4).map(|j| rng.range_at(ctr + j, -1.9, 1.9)).collect();
                if c[0] == 0.0 && c[1] == 0.0 {
                    c[0] = 1e-3;
                }
                c
            };
            let regular = coords[2] != 0.0 || coords[3] != 0.0;
            Some(DomainSample {
                chart: 1,
                coords,
                regular,
            })
        }
    }

    fn sample_cp2(&self, rng: &CounterRng, i: u64) -> Option<DomainSample> {
        let ctr = 8 * i;
        let role = i % (2 * STRATUM_PERIOD);
        let mut coords: Vec<f64> = (0..6)
            .map(|j| rng.gaussian_at(ctr + j as u64))
            .collect();
        // Coordinate-plane strata: zero out one homogeneous coordinate
        // (or two, landing on a fixed point).
        match role {
            0 => {
                coords[0] = 0.0;
                coords[1] = 0.0;
            }
            1 => {
                coords[2] = 0.0;
                coords[3] = 0.0;
            }
            2 => {
                coords[4] = 0.0;
                coords[5] = 0.0;
            }
            3 => {
                coords[0] = 0.0;
                coords[1] = 0.0;
                coords[2] = 0.0;
                coords[3] = 0.0;
            }
            4 => {
                coords[0] = 0.0;
                coords[1] = 0.0;
                coords[4] = 0.0;
                coords[5] = 0.0;
            }
            5 => {
                coords[2] = 0.0;
                coords[3] = 0.0;
                coords[4] = 0.0;
                coords[5] = 0.0;
            }
            _ => {}
        }
        let norms: Vec<f64> = (0..3)
            .map(|k| coords[2 * k] * coords[2 * k] + coords[2 * k + 1] * coords[2 * k + 1])
            .collect();
        if norms.iter().sum::<f64>() < 1e-12 {
            return None;
        }
        let regular = norms.iter().all(|n| *n > 0.0);
        Some(DomainSample {
            chart: 0,
            coords,
            regular,
        })
    }

    fn sample_u2(&self, rng: &CounterRng, i: u64) -> DomainSample {
        let coords: Vec<f64> = (0..16).map(|j| rng.gaussian_at(32 * i + j)).collect();
        let value = self.raw_momentum_u2(&coords);
        let regular = (value[0] - value[1]).abs() > 1e-9;
        DomainSample {
            chart: 0,
            coords,
            regular,
        }
    }

    /// The momentum value of a sample.
    pub fn momentum(&self, s: &DomainSample) -> Point {
        let raw = match self.kind {
            SceneKind::C2Standard | SceneKind::Prato => vec![
                0.5 * (s.coords[0] * s.coords[0] + s.coords[1] * s.coords[1]),
                0.5 * (s.coords[2] * s.coords[2] + s.coords[3] * s.coords[3]),
            ],
            SceneKind::KarshonLerman => {
                if s.chart == 0 {
                    vec![s.coords[0], s.coords[1]]
                } else {
                    vec![
                        0.5 * (s.coords[0] * s.coords[0] + s.coords[1] * s.coords[1]),
                        0.5 * (s.coords[2] * s.coords[2] + s.coords[3] * s.coords[3]),
                    ]
                }
            }
            SceneKind::Cp2Toric => {
                let n: Vec<f64> = (0..3)
                    .map(|k| {
                        s.coords[2 * k] * s.coords[2 * k]
                            + s.coords[2 * k + 1] * s.coords[2 * k + 1]
                    })
                    .collect();
                let total = 2.0 * (n[0] + n[1] + n[2]);
                vec![n[1] / total, n[2] / total]
            }
            SceneKind::Cylinder => vec![s.coords[1]],
            SceneKind::U2OrbitSum => self.raw_momentum_u2(&s.coords),
        };
        let mut v: Vec<f64> = raw.iter().map(|x| self.post_scale * x).collect();
        for (vi, o) in v.iter_mut().zip(&self.post_offset) {
            *vi += o;
        }
        Point(v)
    }

    fn raw_momentum_u2(&self, coords: &[f64]) -> Vec<f64> {
        let (a, b) = match self.kind {
            SceneKind::U2OrbitSum => ([1.0, 0.0], [1.0, 0.0]),
            _ => unreachable!("u2 momentum on a torus scene"),
        };
        let u1 = unitary_from_coords(&coords[0..8]);
        let u2 = unitary_from_coords(&coords[8..16]);
        let m = conjugated_diag(&u1, &a).add(&conjugated_diag(&u2, &b));
        let mut eig = hermitian_eigenvalues(&m, 1e-9).unwrap_or_else(|_| vec![0.0, 0.0]);
        eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
        eig
    }

    /// Rotate a sample by torus angles; the momentum must be invariant.
    /// Charts without an explicit torus factor return the sample unchanged.
    pub fn torus_rotate(&self, s: &DomainSample, theta: &[f64]) -> DomainSample {
        let rot_pair = |x: f64, y: f64, t: f64| -> (f64, f64) {
            (x * t.cos() - y * t.sin(), x * t.sin() + y * t.cos())
        };
        let mut out = s.clone();
        match self.kind {
            SceneKind::C2Standard | SceneKind::Prato => {
                let (a, b) = rot_pair(s.coords[0], s.coords[1], theta[0]);
                let (c, d) = rot_pair(s.coords[2], s.coords[3], theta[1 % theta.len()]);
                out.coords = vec![a, b, c, d];
            }
            SceneKind::KarshonLerman => {
                if s.chart == 1 {
                    let (a, b) = rot_pair(s.coords[0], s.coords[1], theta[0]);
                    let (c, d) = rot_pair(s.coords[2], s.coords[3], theta[1 % theta.len()]);
                    out.coords = vec![a, b, c, d];
                }
                // The plane chart carries the torus in the dropped fiber
                // factor; its coordinates are momentum values already.
            }
            SceneKind::Cp2Toric => {
                let (a, b) = rot_pair(s.coords[2], s.coords[3], theta[0]);
                let (c, d) = rot_pair(s.coords[4], s.coords[5], theta[1 % theta.len()]);
                out.coords = vec![s.coords[0], s.coords[1], a, b, c, d];
            }
            SceneKind::Cylinder => {
                out.coords = vec![
                    (s.coords[0] + theta[0]).rem_euclid(2.0 * std::f64::consts::PI),
                    s.coords[1],
                ];
            }
            SceneKind::U2OrbitSum => {}
        }
        out
    }

    /// Local cone at a sample, where the scene exposes a local model.
    pub fn local_cone_at(&self, s: &DomainSample) -> Option<ConvexCone> {
        let v = self.momentum(s);
        match self.kind {
            SceneKind::C2Standard | SceneKind::Prato => {
                let mut subspace = Vec::new();
                let mut generators = Vec::new();
                for (k, dir) in [[1.0, 0.0], [0.0, 1.0]].iter().enumerate() {
                    let z = s.coords[2 * k] * s.coords[2 * k]
                        + s.coords[2 * k + 1] * s.coords[2 * k + 1];
                    if z > 0.0 {
                        subspace.push(dir.to_vec());
                    } else {
                        generators.push(dir.to_vec());
                    }
                }
                Some(ConvexCone {
                    vertex: v,
                    subspace,
                    generators,
                })
            }
            SceneKind::KarshonLerman => {
                if s.chart == 0 {
                    Some(ConvexCone {
                        vertex: v,
                        subspace: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                        generators: vec![],
                    })
                } else {
                    let w = s.coords[2] * s.coords[2] + s.coords[3] * s.coords[3];
                    let (subspace, generators) = if w > 0.0 {
                        (vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![])
                    } else {
                        (vec![vec![1.0, 0.0]], vec![vec![0.0, 1.0]])
                    };
                    Some(ConvexCone {
                        vertex: v,
                        subspace,
                        generators,
                    })
                }
            }
            SceneKind::Cylinder => Some(ConvexCone {
                vertex: v,
                subspace: vec![vec![1.0]],
                generators: vec![],
            }),
            _ => None,
        }
    }

    /// Escape probes toward infinity and toward any removed set.
    pub fn escape_paths(&self, rng: &CounterRng, n_paths: usize, escape_radius: f64) -> Vec<EscapePath> {
        let stages = 10usize;
        let mut paths = Vec::new();
        let mk = |chart: usize, coords: Vec<f64>, regular: bool| DomainSample {
            chart,
            coords,
            regular,
        };
        match self.kind {
            SceneKind::C2Standard | SceneKind::Prato => {
                // Structured directions first (axes and the balanced
                // diagonal), then random rays.
                let mut dirs: Vec<[f64; 4]> = vec![
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 1.0, 0.0],
                    [std::f64::consts::FRAC_1_SQRT_2, 0.0, std::f64::consts::FRAC_1_SQRT_2, 0.0],
                ];
                for i in 0..n_paths.saturating_sub(dirs.len()) {
                    let mut d = [0.0; 4];
                    let mut norm = 0.0;
                    for (j, dj) in d.iter_mut().enumerate() {
                        *dj = rng.gaussian_at((i * 4 + j) as u64);
                        norm += *dj * *dj;
                    }
                    let norm = norm.sqrt().max(1e-9);
                    for dj in d.iter_mut() {
                        *dj /= norm;
                    }
                    dirs.push(d);
                }
                for (pi, d) in dirs.iter().enumerate() {
                    let r0 = if self.kind == SceneKind::Prato { 1.6 } else { 0.5 };
                    let path: Vec<DomainSample> = (0..stages)
                        .map(|k| {
                            let r = r0 + (escape_radius - r0) * (k as f64 + 1.0) / stages as f64;
                            let coords: Vec<f64> = d.iter().map(|x| x * r).collect();
                            let regular = (coords[0] != 0.0 || coords[1] != 0.0)
                                && (coords[2] != 0.0 || coords[3] != 0.0);
                            mk(0, coords, regular)
                        })
                        .collect();
                    paths.push(EscapePath {
                        label: format!("norm_ray_{pi}"),
                        stages: path,
                    });
                }
                if self.kind == SceneKind::Prato {
                    // Paths converging onto the removed bidisk boundary.
                    for pi in 0..4usize {
                        let phi = rng.range_at(900 + pi as u64, 0.0, 2.0 * std::f64::consts::PI);
                        let c2 = 0.4 * phi.cos();
                        let d2 = 0.4 * phi.sin();
                        let path: Vec<DomainSample> = (0..stages)
                            .map(|k| {
                                let delta = 0.5 / (k as f64 + 1.0).exp2();
                                mk(
                                    0,
                                    vec![(1.0 + delta) * phi.sin(), (1.0 + delta) * phi.cos(), c2, d2],
                                    true,
                                )
                            })
                            .collect();
                        paths.push(EscapePath {
                            label: format!("bidisk_boundary_{pi}"),
                            stages: path,
                        });
                    }
                }
            }
            SceneKind::KarshonLerman => {
                // Approach the removed positive axis and the removed origin
                // in the plane chart; run norm rays in both charts.
                for pi in 0..3usize {
                    let x0 = 0.4 + 0.4 * pi as f64;
                    for (side, sgn) in [("above", 1.0), ("below", -1.0)] {
                        let path: Vec<DomainSample> = (0..stages)
                            .map(|k| {
                                let y = sgn * 0.5 / (k as f64 + 1.0).exp2();
                                mk(0, vec![x0, y], true)
                            })
                            .collect();
                        paths.push(EscapePath {
                            label: format!("axis_{side}_{x0}"),
                            stages: path,
                        });
                    }
                }
                let origin_path: Vec<DomainSample> = (0..stages)
                    .map(|k| {
                        let d = 0.5 / (k as f64 + 1.0).exp2();
                        mk(0, vec![-d, -d], true)
                    })
                    .collect();
                paths.push(EscapePath {
                    label: "origin".into(),
                    stages: origin_path,
                });
                for pi in 0..n_paths.min(6) {
                    let phi = rng.range_at(700 + pi as u64, 0.0, 2.0 * std::f64::consts::PI);
                    let path: Vec<DomainSample> = (0..stages)
                        .map(|k| {
                            let r = 0.5 + (escape_radius - 0.5) * (k as f64 + 1.0) / stages as f64;
                            mk(0, vec![r * phi.cos(), r * phi.sin() + 1e-6], true)
                        })
                        .collect();
                    paths.push(EscapePath {
                        label: format!("plane_ray_{pi}"),
                        stages: path,
                    });
                }
            }
            SceneKind::Cylinder => {
                for (label, sgn) in [("up", 1.0), ("down", -1.0)] {
                    let path: Vec<DomainSample> = (0..stages)
                        .map(|k| {
                            let p = sgn * escape_radius * (k as f64 + 1.0) / stages as f64;
                            mk(0, vec![1.0, p], true)
                        })
                        .collect();
                    paths.push(EscapePath {
                        label: format!("fiber_{label}"),
                        stages: path,
                    });
                }
            }
            SceneKind::Cp2Toric | SceneKind::U2OrbitSum => {
                // Compact domains: no escape probes.
            }
        }
        paths
    }
}

fn unitary_from_coords(coords: &[f64]) -> CMat {
    // Deterministically reuse the Gram-Schmidt construction by treating the
    // coordinates as the Ginibre entries.
    use num_complex::Complex64 as C64;
    let n = 2;
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| C64::new(coords[2 * (j * n + i)], coords[2 * (j * n + i) + 1]))
                .collect()
        })
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let d = proj * cols[k][i];
                cols[j][i] -= d;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let norm = norm.max(1e-12);
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = CMat::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u.set(i, j, cols[j][i]);
        }
    }
    u
}

/// External JSON form of a scene.
#[derive(Serialize, Deserialize)]
struct SceneJson {
    name: String,
    builtin: String,
    #[serde(rename = "box")]
    image_box: (Vec<f64>, Vec<f64>),
    regular: String,
    fixed_points: Vec<Point>,
    group: GroupTag,
    metadata: SceneMeta,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    compose: Option<ComposeJson>,
}

#[derive(Serialize, Deserialize)]
struct ComposeJson {
    scale: f64,
    offset: Vec<f64>,
}

impl Scene {
    fn builtin_id(&self) -> &'static str {
        match self.kind {
            SceneKind::C2Standard => "c2_standard",
            SceneKind::Prato => "prato",
            SceneKind::KarshonLerman => "karshon_lerman",
            SceneKind::Cp2Toric => "cp2_toric",
            SceneKind::Cylinder => "cylinder",
            SceneKind::U2OrbitSum => "u2_orbit_sum",
        }
    }

    fn regular_id(&self) -> &'static str {
        match self.kind {
            SceneKind::C2Standard | SceneKind::Prato => "all_complex_coords_nonzero",
            SceneKind::KarshonLerman => "second_chart_fiber_nonzero",
            SceneKind::Cp2Toric => "all_homogeneous_coords_nonzero",
            SceneKind::Cylinder => "all",
            SceneKind::U2OrbitSum => "distinct_eigenvalues",
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let j = SceneJson {
            name: self.name.clone(),
            builtin: self.builtin_id().to_string(),
            image_box: self.image_box.clone(),
            regular: self.regular_id().to_string(),
            fixed_points: self.fixed_points.clone(),
            group: self.group,
            metadata: self.meta,
            compose: if self.post_scale != 1.0 || self.post_offset.iter().any(|v| *v != 0.0) {
                Some(ComposeJson {
                    scale: self.post_scale,
                    offset: self.post_offset.clone(),
                })
            } else {
                None
            },
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(text: &str) -> Result<Scene> {
        let j: SceneJson = serde_json::from_str(text)?;
        let mut scene = crate::scenes::builtin_scene(&j.builtin)?;
        scene.name = j.name;
        scene.image_box = j.image_box;
        scene.meta = j.metadata;
        if let Some(c) = j.compose {
            if c.offset.len() != scene.dim_target {
                return Err(Error::DimensionMismatch {
                    expected: scene.dim_target,
                    got: c.offset.len(),
                });
            }
            scene.post_scale = c.scale;
            scene.post_offset = c.offset;
        }
        Ok(scene)
    }
}
