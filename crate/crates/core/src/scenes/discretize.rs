//! Bridges from analytic scenes to discrete spaces: sampled neighbor graphs
//! and generated spaces glued from local normal-form charts.

use crate::geometry::cone::ConvexCone;
use crate::geometry::point::{self, Point};
use crate::lgp::space::DiscreteSpace;
use crate::linalg::{hermitian_eigenvalues, CMat};
use crate::rng::CounterRng;
use crate::{Error, Result};

use crate::diagnosis::scene::{DomainSample, Scene};

#[derive(Clone, Copy, Debug)]
pub struct DiscretizeParams {
    pub n_points: usize,
    /// Neighbors per vertex in the sample graph.
    pub k: usize,
    pub seed: u64,
    /// Fiber bucket width; `None` uses half the median edge image step.
    pub eps: Option<f64>,
    /// Keep only samples within this coordinate norm (per chart).
    pub truncation: Option<f64>,
}

impl Default for DiscretizeParams {
    fn default() -> Self {
        DiscretizeParams {
            n_points: 2000,
            k: 8,
            seed: 1,
            eps: None,
            truncation: None,
        }
    }
}

/// Build a k-nearest-neighbor sample graph of the scene domain, attach
/// momentum values and (where the scene provides local models) declared
/// cones. Errors when the graph comes out disconnected: all built-in scene
/// domains are connected, so a disconnected graph means too few samples.
pub fn discretize_scene(scene: &Scene, params: &DiscretizeParams) -> Result<DiscreteSpace> {
    let rng = CounterRng::new(params.seed, 0x6f);
    let mut samples: Vec<DomainSample> = Vec::with_capacity(params.n_points);
    let mut i = 0u64;
    let budget = (params.n_points as u64).saturating_mul(200).max(10_000);
    while samples.len() < params.n_points && i < budget {
        let idx = i;
        i += 1;
        let Some(s) = scene.sample(&rng, idx) else {
            continue;
        };
        if let Some(tr) = params.truncation {
            if point::norm(&s.coords) > tr {
                continue;
            }
        }
        samples.push(s);
    }
    if samples.len() < params.n_points {
        return Err(Error::SamplerMismatch {
            rate: samples.len() as f64 / budget as f64,
        });
    }

    // Symmetrized k-nearest-neighbor edges per chart, then cross-chart
    // identification by closest momentum value where charts overlap.
    let n = samples.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let charts: std::collections::BTreeSet<usize> = samples.iter().map(|s| s.chart).collect();
    for &chart in &charts {
        let ids: Vec<usize> = (0..n).filter(|&v| samples[v].chart == chart).collect();
        for &u in &ids {
            let mut dists: Vec<(f64, usize)> = ids
                .iter()
                .filter(|&&v| v != u)
                .map(|&v| (point::dist(&samples[u].coords, &samples[v].coords), v))
                .collect();
            dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for &(_, v) in dists.iter().take(params.k) {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    if charts.len() > 1 {
        // Identify charts along shared momentum values.
        let values: Vec<Point> = samples.iter().map(|s| scene.momentum(s)).collect();
        for u in 0..n {
            let mut best: Option<(f64, usize)> = None;
            for v in 0..n {
                if samples[u].chart == samples[v].chart {
                    continue;
                }
                let d = values[u].dist(&values[v]);
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, v));
                }
            }
            if let Some((d, v)) = best {
                let scale = 0.05;
                if d <= scale {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let f: Vec<Point> = samples.iter().map(|s| scene.momentum(s)).collect();
    let cones: Option<Vec<ConvexCone>> = samples
        .iter()
        .map(|s| scene.local_cone_at(s))
        .collect::<Option<Vec<_>>>();

    let mut space = DiscreteSpace {
        vertices: n,
        edges,
        f,
        cones,
        closed: scene.meta.closed_map,
        eps: 1.0,
    };
    // Fiber buckets default to half the companion raster cell, which is the
    // largest edge image step.
    let max_step = space
        .edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| space.f[u].dist(&space.f[v]))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    space.eps = params.eps.unwrap_or(0.5 * max_step);

    // Connectivity check in the sample graph.
    let adj = space.adjacency();
    let reachable = space.hop_ball(&adj, 0, n);
    if reachable.len() != n {
        return Err(Error::DisconnectedSampleGraph);
    }
    space.validate()?;
    Ok(space)
}

/// A generated space glued from two affine normal-form charts over a box
/// grid: an injective affine map composed with a piecewise-linear squeeze
/// along the first axis (the chart seam). Cones follow the box faces:
/// interior axes contribute linear directions, boundary faces contribute
/// generators. Every such space satisfies the closedness, cone, and
/// fiber-connectivity hypotheses by construction.
pub fn glued_model_space(seed: u64) -> DiscreteSpace {
    let rng = CounterRng::new(seed, 0x91);
    let dim = 1 + (rng.u64_at(0) % 2) as usize; // 1 or 2
    let grid: usize = match dim {
        1 => 48,
        _ => 14,
    };

    // Nonsingular matrix with a bounded smallest singular value.
    let mut a: Vec<Vec<f64>> = Vec::new();
    for attempt in 0..64u64 {
        a = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| rng.range_at(100 + attempt * 16 + (r * dim + c) as u64, -1.0, 1.0))
                    .collect()
            })
            .collect();
        if smallest_singular_value(&a) > 0.35 {
            break;
        }
    }
    let base: Vec<f64> = (0..dim).map(|j| rng.range_at(900 + j as u64, -0.5, 0.5)).collect();

    // Piecewise-linear squeeze along axis 0 (two glued charts).
    let c_left = rng.range_at(950, 0.6, 1.5);
    let c_right = rng.range_at(951, 0.6, 1.5);
    let squeeze = move |x: f64| -> f64 {
        if x <= 0.5 {
            c_left * x
        } else {
            c_left * 0.5 + c_right * (x - 0.5)
        }
    };

    let step = 1.0 / (grid - 1) as f64;
    let mut coords: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; dim];
    loop {
        coords.push(cur.clone());
        let mut k = 0;
        loop {
            if k == dim {
                break;
            }
            cur[k] += 1;
            if cur[k] < grid {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == dim {
            break;
        }
    }

    let value_of = |g: &[usize]| -> Vec<f64> {
        let mut h = vec![0.0; dim];
        for (j, gj) in g.iter().enumerate() {
            let x = *gj as f64 * step;
            h[j] = if j == 0 { squeeze(x) } else { x };
        }
        let mut v = base.clone();
        for (j, hj) in h.iter().enumerate() {
            for (r, row) in a.iter().enumerate() {
                v[r] += row[j] * hj;
            }
        }
        v
    };

    let index_of = |g: &[usize]| -> usize {
        let mut idx = 0usize;
        for j in (0..dim).rev() {
            idx = idx * grid + g[j];
        }
        idx
    };

    let n = coords.len();
    let mut f: Vec<Point> = vec![Point(vec![]); n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut cones: Vec<ConvexCone> = vec![
        ConvexCone {
            vertex: Point(vec![]),
            subspace: vec![],
            generators: vec![],
        };
        n
    ];
    let col = |j: usize| -> Vec<f64> { (0..dim).map(|r| a[r][j]).collect() };

    for g in &coords {
        let u = index_of(g);
        f[u] = Point(value_of(g));
        let mut subspace = Vec::new();
        let mut generators = Vec::new();
        for j in 0..dim {
            if g[j] == 0 {
                generators.push(col(j));
            } else if g[j] == grid - 1 {
                generators.push(point::scale(&col(j), -1.0));
            } else {
                subspace.push(col(j));
            }
        }
        cones[u] = ConvexCone {
            vertex: f[u].clone(),
            subspace,
            generators,
        };
        for j in 0..dim {
            if g[j] + 1 < grid {
                let mut gn = g.clone();
                gn[j] += 1;
                edges.push((u, index_of(&gn)));
            }
        }
    }

    // Smallest neighbor image gap fixes the fiber bucket width.
    let min_gap = edges
        .iter()
        .map(|&(u, v)| f[u].dist(&f[v]))
        .fold(f64::INFINITY, f64::min);

    DiscreteSpace {
        vertices: n,
        edges,
        f,
        cones: Some(cones),
        closed: true,
        eps: 0.25 * min_gap,
    }
}

fn smallest_singular_value(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    // Gram matrix eigenvalues via the Hermitian solver (real symmetric).
    let mut g = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for row in a {
                acc += row[i] * row[j];
            }
            g.set(i, j, num_complex::Complex64::new(acc, 0.0));
        }
    }
    let eig = hermitian_eigenvalues(&g, 1e-9).unwrap_or_default();
    eig.into_iter()
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgp::verdict::{lgp_verdict, LgpParams};
    use crate::scenes::builtin_scene;

    #[test]
    fn cylinder_discretization_is_connected_and_consistent() {
        let scene = builtin_scene("cylinder").unwrap();
        let params = DiscretizeParams {
            n_points: 1500,
            k: 8,
            seed: 7,
            eps: None,
            truncation: None,
        };
        let space = discretize_scene(&scene, &params).unwrap();
        let v = lgp_verdict(&space, &LgpParams::default()).unwrap();
        assert!(v.consistent, "{v:?}");
    }

    #[test]
    fn c2_ball_discretization_connected() {
        let scene = builtin_scene("c2_standard").unwrap();
        let params = DiscretizeParams {
            n_points: 800,
            k: 8,
            seed: 3,
            eps: None,
            truncation: Some(1.5),
        };
        let space = discretize_scene(&scene, &params).unwrap();
        let adj = space.adjacency();
        assert_eq!(space.hop_ball(&adj, 0, space.vertices).len(), space.vertices);
    }

    #[test]
    fn glued_spaces_pass_all_hypotheses_and_stay_consistent() {
        for seed in 0..6u64 {
            let s = glued_model_space(seed);
            let v = lgp_verdict(&s, &LgpParams::default()).unwrap();
            assert!(
                v.hypotheses.lfc_ok && v.hypotheses.lcd_ok && v.hypotheses.closed_ok,
                "seed {seed}: hypotheses {:?}",
                v.hypotheses
            );
            assert!(v.consistent, "seed {seed}: {v:?}");
        }
    }
}
