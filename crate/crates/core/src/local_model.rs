//! Torus-action local normal form: the model momentum map
//! `s -> base + i1(beta) + 1/2 sum_j norms_sq[j] * alpha_j`,
//! its polyhedral cone, and sampled neighborhood / openness / fiber checks.
//!
//! The group coordinate of the model is dropped: the momentum formula does
//! not depend on it. Weights are stored embedded in the target space
//! (zero-padded on the translation block) so all cone arithmetic lives in
//! one space. The symplectic form and the representation behind the weights
//! are not represented; `norms_sq` are primitive inputs.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::defaults;
use crate::geometry::cone::ConvexCone;
use crate::geometry::point::{self, Point};
use crate::lp::feasible_nonneg;
use crate::rng::CounterRng;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalModel {
    /// Momentum value at the model's center point.
    pub base: Point,
    /// Dimension of the translation block.
    pub dim_t1: usize,
    /// Directions spanning the translation block inside the target space.
    #[serde(rename = "t0_perp")]
    pub t0_perp_basis: Vec<Vec<f64>>,
    /// Weight directions (possibly empty), embedded in the target space.
    #[serde(default)]
    pub weights: Vec<Vec<f64>>,
}

/// Model-space sample: translation coordinates plus one squared norm per
/// weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSample {
    pub beta: Vec<f64>,
    pub norms_sq: Vec<f64>,
}

/// Sampling constraints used to build adversarial models in tests: the
/// honest model uses `None`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SampleConstraint {
    None,
    /// Pin one squared norm to zero (kills an entire weight direction).
    FixNormZero(usize),
    /// Exclude all squared norms below a floor (punctures the domain near
    /// the vertex).
    MinAllNorms(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub required_cells: usize,
    pub occupied_cells: usize,
    /// Ambient points of uncovered required cells.
    pub uncovered: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OpennessWitness {
    pub box_center: ModelSample,
    pub uncovered_value: Point,
}

impl LocalModel {
    pub fn new(
        base: Point,
        dim_t1: usize,
        t0_perp_basis: Vec<Vec<f64>>,
        weights: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let m = LocalModel {
            base,
            dim_t1,
            t0_perp_basis,
            weights,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.base.dim();
        if self.t0_perp_basis.len() != self.dim_t1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim_t1,
                got: self.t0_perp_basis.len(),
            });
        }
        for v in self.t0_perp_basis.iter().chain(&self.weights) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if point::rank(&self.t0_perp_basis, 1e-12) < self.dim_t1 {
            return Err(Error::InvalidArgument(
                "translation block basis is linearly dependent",
            ));
        }
        for (i, w) in self.weights.iter().enumerate() {
            if point::norm(w) == 0.0 {
                return Err(Error::DegenerateGenerator(i));
            }
        }
        Ok(())
    }

    pub fn target_dim(&self) -> usize {
        self.base.dim()
    }

    fn check_sample(&self, s: &ModelSample) -> Result<()> {
        if s.beta.len() != self.dim_t1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim_t1,
                got: s.beta.len(),
            });
        }
        if s.norms_sq.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: s.norms_sq.len(),
            });
        }
        if s.norms_sq.iter().any(|v| *v < 0.0) {
            return Err(Error::InvalidArgument("squared norms must be nonnegative"));
        }
        Ok(())
    }

    /// The model momentum value: base + translation + half-sum of squared
    /// norms against the weights. Depends on the weight coordinates only
    /// through `norms_sq`.
    pub fn momentum(&self, s: &ModelSample) -> Result<Point> {
        self.check_sample(s)?;
        let mut v = self.base.0.clone();
        for (b, dir) in s.beta.iter().zip(&self.t0_perp_basis) {
            point::axpy(&mut v, *b, dir);
        }
        for (nsq, alpha) in s.norms_sq.iter().zip(&self.weights) {
            point::axpy(&mut v, 0.5 * nsq, alpha);
        }
        Ok(Point(v))
    }

    /// The local cone at the model's center: vertex at the base value,
    /// linear part the translation block, generators the weights.
    pub fn local_cone(&self) -> ConvexCone {
        ConvexCone {
            vertex: self.base.clone(),
            subspace: self.t0_perp_basis.clone(),
            generators: self.weights.clone(),
        }
    }

    /// The local cone at an interior sample: weights whose squared norm is
    /// strictly positive become bidirectional (they join the linear part);
    /// weights pinned at zero stay one-sided generators.
    pub fn cone_at_sample(&self, s: &ModelSample, face_eps: f64) -> Result<ConvexCone> {
        self.check_sample(s)?;
        let vertex = self.momentum(s)?;
        let mut linear: Vec<Vec<f64>> = self.t0_perp_basis.clone();
        let mut generators = Vec::new();
        for (nsq, alpha) in s.norms_sq.iter().zip(&self.weights) {
            if *nsq > face_eps {
                linear.push(alpha.clone());
            } else {
                generators.push(alpha.clone());
            }
        }
        // Keep an independent subset of the linear directions.
        let mut subspace: Vec<Vec<f64>> = Vec::new();
        for v in linear {
            let mut trial = subspace.clone();
            trial.push(v.clone());
            if point::rank(&trial, 1e-10) > subspace.len() {
                subspace.push(v);
            }
        }
        ConvexCone::new(vertex, subspace, generators)
    }

    pub fn default_sample(&self, rng: &CounterRng, i: u64, constraint: SampleConstraint) -> ModelSample {
        let k = self.dim_t1;
        let m = self.weights.len();
        let beta: Vec<f64> = (0..k)
            .map(|j| {
                rng.range_at(
                    i * (k + m) as u64 + j as u64,
                    -defaults::MODEL_BETA_HALF_WIDTH,
                    defaults::MODEL_BETA_HALF_WIDTH,
                )
            })
            .collect();
        let mut norms_sq: Vec<f64> = (0..m)
            .map(|j| {
                rng.range_at(
                    i * (k + m) as u64 + (k + j) as u64,
                    0.0,
                    defaults::MODEL_NORM_MAX,
                )
            })
            .collect();
        match constraint {
            SampleConstraint::None => {}
            SampleConstraint::FixNormZero(idx) => {
                if idx < norms_sq.len() {
                    norms_sq[idx] = 0.0;
                }
            }
            SampleConstraint::MinAllNorms(floor) => {
                for v in norms_sq.iter_mut() {
                    *v = floor + (defaults::MODEL_NORM_MAX - floor) * (*v / defaults::MODEL_NORM_MAX);
                }
            }
        }
        ModelSample { beta, norms_sq }
    }

    /// (VN) at resolution `radius/3`: map `n_samples` model samples and
    /// check that every cone point within `radius` of the vertex is covered
    /// by an image cell.
    pub fn check_vertex_neighborhood(
        &self,
        radius: f64,
        n_samples: usize,
        seed: u64,
        constraint: SampleConstraint,
    ) -> Result<CoverageReport> {
        if n_samples < defaults::MIN_COVERAGE_SAMPLES {
            return Err(Error::SampleBudgetTooSmall {
                got: n_samples,
                min: defaults::MIN_COVERAGE_SAMPLES,
            });
        }
        let cone = self.local_cone();
        let rng = CounterRng::new(seed, 0x5a);
        let images = (0..n_samples as u64)
            .map(|i| self.momentum(&self.default_sample(&rng, i, constraint)))
            .collect::<Result<Vec<_>>>()?;
        coverage_against_cone(&cone, &self.base, &images, radius, radius / 3.0)
    }

    /// (SLO) by the two-map factorization. The first factor is a product of
    /// one-dimensional maps (the translation coordinates and one squared
    /// norm per weight), so its openness onto the orthant is probed by
    /// dense one-dimensional marginal rasters over random open boxes: near
    /// an interior sample, every reachable marginal cell must contain an
    /// accepted sample. The second factor is linear onto the cone block and
    /// is surjective by construction, so marginal coverage pushes forward
    /// to a cone-relative neighborhood of the sample's value.
    ///
    /// The factorized probe is exact for the representable sampler
    /// constraints (all per-coordinate); a puncture coupling several
    /// coordinates jointly would need the joint raster it deliberately
    /// avoids.
    pub fn check_open_onto_cone(
        &self,
        n_trials: usize,
        seed: u64,
        constraint: SampleConstraint,
    ) -> Result<(bool, Option<OpennessWitness>)> {
        let k = self.dim_t1;
        let m = self.weights.len();
        let rng = CounterRng::new(seed, 0x50);
        let sub_rng = rng.substream(1);
        let n_sub = 3000usize;

        for trial in 0..n_trials as u64 {
            let base_ctr = trial * (k + m + 2) as u64;
            // Random open box in sample space (clipped to the domain).
            let mut lo = Vec::with_capacity(k + m);
            let mut hi = Vec::with_capacity(k + m);
            for j in 0..k + m {
                let (range_lo, range_hi) = if j < k {
                    (-defaults::MODEL_BETA_HALF_WIDTH, defaults::MODEL_BETA_HALF_WIDTH)
                } else {
                    (0.0, defaults::MODEL_NORM_MAX)
                };
                let w = 0.25 * (range_hi - range_lo);
                let c = rng.range_at(base_ctr + j as u64, range_lo, range_hi);
                lo.push((c - w).max(range_lo));
                hi.push((c + w).min(range_hi));
            }

            // Sub-samples inside the box, respecting the domain constraint.
            let mut samples: Vec<ModelSample> = Vec::with_capacity(n_sub);
            for i in 0..n_sub as u64 {
                let ctr = (trial * n_sub as u64 + i) * (k + m) as u64;
                let mut beta = Vec::with_capacity(k);
                let mut norms = Vec::with_capacity(m);
                for j in 0..k + m {
                    let v = sub_rng.range_at(ctr + j as u64, lo[j], hi[j]);
                    if j < k {
                        beta.push(v);
                    } else {
                        norms.push(v);
                    }
                }
                let mut s = ModelSample { beta, norms_sq: norms };
                match constraint {
                    SampleConstraint::None => {}
                    SampleConstraint::FixNormZero(idx) => {
                        if idx < s.norms_sq.len() {
                            s.norms_sq[idx] = 0.0;
                        }
                    }
                    SampleConstraint::MinAllNorms(floor) => {
                        if s.norms_sq.iter().any(|v| *v < floor) {
                            continue; // rejected by the punctured domain
                        }
                    }
                }
                samples.push(s);
            }
            if samples.is_empty() {
                continue;
            }

            // Interior test point: the accepted sample closest to the box
            // center.
            let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
            let test = samples
                .iter()
                .min_by(|a, b| {
                    let da = sample_dist(a, &center);
                    let db = sample_dist(b, &center);
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap()
                .clone();

            let coord_of = |s: &ModelSample, j: usize| -> f64 {
                if j < k {
                    s.beta[j]
                } else {
                    s.norms_sq[j - k]
                }
            };

            for j in 0..k + m {
                let half = 0.5 * (hi[j] - lo[j]);
                if half <= 0.0 {
                    continue;
                }
                let r = 0.35 * half;
                let h = r / 4.0;
                let p_j = coord_of(&test, j);
                let steps = (r / h).floor() as i64;
                for cell in -steps..=steps {
                    let q = p_j + (cell as f64 + 0.5 * cell.signum() as f64) * h;
                    if q < lo[j] || q > hi[j] {
                        continue;
                    }
                    let covered = samples
                        .iter()
                        .any(|s| (coord_of(s, j) - q).abs() <= 0.5 * h);
                    if !covered {
                        // Ambient witness: the unreached value with the
                        // blocked coordinate substituted.
                        let mut blocked = test.clone();
                        if j < k {
                            blocked.beta[j] = q;
                        } else {
                            blocked.norms_sq[j - k] = q.max(0.0);
                        }
                        let uncovered_value = self.momentum(&blocked)?;
                        return Ok((
                            false,
                            Some(OpennessWitness {
                                box_center: test,
                                uncovered_value,
                            }),
                        ));
                    }
                }
            }
        }
        Ok((true, None))
    }

    /// Number of connected components of the model fiber over `value`,
    /// estimated by sampling the solution polytope and single-linkage
    /// clustering. Errors when the value lies outside the local cone.
    pub fn local_fiber_components(
        &self,
        value: &Point,
        n_samples: usize,
        seed: u64,
    ) -> Result<usize> {
        if value.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                got: value.dim(),
            });
        }
        let n = self.target_dim();
        let k = self.dim_t1;
        let m = self.weights.len();
        let delta = point::sub(&value.0, &self.base.0);

        // Columns of the sample-to-value map: translation block, then halved
        // weights. beta is split into +/- parts for the LP.
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(2 * k + m);
        cols.extend(self.t0_perp_basis.iter().cloned());
        cols.extend(self.t0_perp_basis.iter().map(|v| point::scale(v, -1.0)));
        cols.extend(self.weights.iter().map(|w| point::scale(w, 0.5)));
        let a: Vec<Vec<f64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let feas = feasible_nonneg(&a, &delta, &defaults::CONE_FEASIBILITY_TOL);
        let Some(x) = feas.solution else {
            return Err(Error::EmptyFiber);
        };
        let mut x0: Vec<f64> = Vec::with_capacity(k + m);
        for j in 0..k {
            x0.push(x[j] - x[k + j]);
        }
        for j in 0..m {
            x0.push(x[2 * k + j]);
        }

        // Nullspace of the (unsplit) map.
        let unsplit: Vec<Vec<f64>> = {
            let mut c: Vec<Vec<f64>> = Vec::with_capacity(k + m);
            c.extend(self.t0_perp_basis.iter().cloned());
            c.extend(self.weights.iter().map(|w| point::scale(w, 0.5)));
            c
        };
        let null = nullspace(&unsplit, n);
        if null.is_empty() || n_samples < 2 {
            return Ok(1);
        }

        // Stratified (jittered-grid) coefficients: iid uniform draws have
        // log-scale spacing outliers that defeat the 5x-median-gap
        // clustering rule on a connected fiber.
        let rng = CounterRng::new(seed, 0x1b);
        let span = 2.0 * (defaults::MODEL_BETA_HALF_WIDTH + defaults::MODEL_NORM_MAX);
        let d_null = null.len();
        let per_axis = (n_samples as f64).powf(1.0 / d_null as f64).ceil().max(2.0) as u64;
        let total: u64 = per_axis.pow(d_null as u32);
        let step = 2.0 * span / per_axis as f64;
        let mut pts: Vec<Vec<f64>> = Vec::new();
        for i in 0..total {
            let mut p = x0.clone();
            let mut rem = i;
            for (d, b) in null.iter().enumerate() {
                let cell = rem % per_axis;
                rem /= per_axis;
                let jitter = 0.2 * (rng.uniform_at(i * d_null as u64 + d as u64) - 0.5);
                let t = -span + (cell as f64 + 0.5 + jitter) * step;
                point::axpy(&mut p, t, b);
            }
            // Keep points in the model domain: norms nonnegative, box-bounded.
            if p[k..].iter().any(|v| *v < -1e-9) {
                continue;
            }
            if p[..k].iter().any(|v| v.abs() > 2.0 * defaults::MODEL_BETA_HALF_WIDTH) {
                continue;
            }
            if p[k..].iter().any(|v| *v > 2.0 * defaults::MODEL_NORM_MAX) {
                continue;
            }
            pts.push(p);
        }
        if pts.len() < 2 {
            return Ok(1);
        }
        Ok(cluster_count(&pts))
    }
}

fn sample_dist(s: &ModelSample, center: &[f64]) -> f64 {
    let mut d = 0.0;
    for (i, b) in s.beta.iter().enumerate() {
        d += (b - center[i]) * (b - center[i]);
    }
    let k = s.beta.len();
    for (j, v) in s.norms_sq.iter().enumerate() {
        d += (v - center[k + j]) * (v - center[k + j]);
    }
    d
}

/// Shared coverage core: rasterize image points in the cone's intrinsic
/// orthonormal coordinates around `center`, then demand that every cell of
/// the radius ball whose ambient point sits at depth >= h inside the cone is
/// occupied or within the sampling gap of an image point.
fn coverage_against_cone(
    cone: &ConvexCone,
    center: &Point,
    images: &[Point],
    radius: f64,
    h: f64,
) -> Result<CoverageReport> {
    let basis = cone.span_basis();
    let d = basis.len();
    if d == 0 {
        // The cone is its vertex; any nonempty image covers it.
        return Ok(CoverageReport {
            covered: !images.is_empty(),
            required_cells: 1,
            occupied_cells: usize::from(!images.is_empty()),
            uncovered: vec![],
        });
    }

    let mut occupied: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut near: Vec<Vec<f64>> = Vec::new();
    for p in images {
        let rel = point::sub(&p.0, &center.0);
        let y: Vec<f64> = basis.iter().map(|b| point::dot(&rel, b)).collect();
        if point::norm(&y) <= radius + 2.0 * h {
            occupied.insert(y.iter().map(|v| (v / h).floor() as i64).collect());
            near.push(y);
        }
    }

    // Dense samplings are judged at cell resolution; sparse ones get the
    // sampling-gap slack (the largest nearest-neighbor distance dominates
    // the covering radius of the point set).
    let slack = if near.len() >= 2 && near.len() <= 3000 {
        let mut max_nn: f64 = 0.0;
        for (i, a) in near.iter().enumerate() {
            let mut nn = f64::INFINITY;
            for (j, b) in near.iter().enumerate() {
                if i != j {
                    nn = nn.min(point::dist(a, b));
                }
            }
            if nn.is_finite() {
                max_nn = max_nn.max(nn);
            }
        }
        (defaults::COVER_GAP_FACTOR * (d as f64).sqrt() * max_nn).max(h)
    } else {
        h
    };

    let offsets = crate::geometry::grid::ball_offsets(d, radius / h);
    let mut required = 0usize;
    let mut uncovered = Vec::new();
    for o in &offsets {
        let y_c: Vec<f64> = o.iter().map(|c| (*c as f64 + 0.5) * h).collect();
        if point::norm(&y_c) > radius {
            continue;
        }
        let mut ambient = center.0.clone();
        for (b, yc) in basis.iter().zip(&y_c) {
            point::axpy(&mut ambient, *yc, b);
        }
        let q = Point(ambient);
        if !cone.contains_with_depth(&q, h, defaults::CONE_FEASIBILITY_TOL)? {
            continue;
        }
        required += 1;
        let cell: Vec<i64> = y_c.iter().map(|v| (v / h).floor() as i64).collect();
        let hit = occupied.contains(&cell)
            || near
                .iter()
                .any(|y| y.iter().zip(&y_c).all(|(a, b)| (a - b).abs() <= slack));
        if !hit {
            uncovered.push(q);
        }
    }
    Ok(CoverageReport {
        covered: uncovered.is_empty(),
        required_cells: required,
        occupied_cells: occupied.len(),
        uncovered,
    })
}

/// Nullspace basis of the linear map with the given columns (map from
/// R^{cols} to R^n).
fn nullspace(cols: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let ncols = cols.len();
    // Row-reduce the n x ncols matrix.
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i]).collect::<Vec<f64>>())
        .collect();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        // Partial pivot.
        let mut best = row;
        for r in row..n {
            if a[r][col].abs() > a[best][col].abs() {
                best = r;
            }
        }
        if row >= n || a[best][col].abs() < 1e-10 {
            continue;
        }
        a.swap(row, best);
        let piv = a[row][col];
        for v in a[row].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != row && a[r][col].abs() > 0.0 {
                let f = a[r][col];
                for c2 in 0..ncols {
                    a[r][c2] -= f * a[row][c2];
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; ncols];
        v[free] = 1.0;
        for (r, pc) in pivot_col_of_row.iter().enumerate() {
            v[*pc] = -a[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Single-linkage component count with gap threshold at a fixed multiple of
/// the median nearest-neighbor distance.
fn cluster_count(pts: &[Vec<f64>]) -> usize {
    let n = pts.len();
    let mut nn = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = point::dist(&pts[i], &pts[j]);
                if d < nn[i] {
                    nn[i] = d;
                }
            }
        }
    }
    let mut sorted = nn.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[n / 2];
    let gap = defaults::FIBER_CLUSTER_GAP_FACTOR * median.max(1e-12);

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if point::dist(&pts[i], &pts[j]) <= gap {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        roots.insert(r);
    }
    roots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_origin_model() -> LocalModel {
        LocalModel::new(
            Point(vec![0.0, 0.0]),
            0,
            vec![],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap()
    }

    #[test]
    fn momentum_formula_examples() {
        let m = LocalModel::new(
            Point(vec![0.0, 0.0]),
            1,
            vec![vec![1.0, 0.0]],
            vec![vec![0.0, 2.0]],
        )
        .unwrap();
        let v = m
            .momentum(&ModelSample {
                beta: vec![0.3],
                norms_sq: vec![1.0],
            })
            .unwrap();
        assert_eq!(v.0, vec![0.3, 1.0]);

        // zero sample returns the base value
        let v0 = m
            .momentum(&ModelSample {
                beta: vec![0.0],
                norms_sq: vec![0.0],
            })
            .unwrap();
        assert_eq!(v0.0, vec![0.0, 0.0]);

        // pure translation block
        let t = LocalModel::new(
            Point(vec![1.0, 1.0]),
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![],
        )
        .unwrap();
        let vt = t
            .momentum(&ModelSample {
                beta: vec![0.2, -0.4],
                norms_sq: vec![],
            })
            .unwrap();
        assert!((vt[0] - 1.2).abs() < 1e-15 && (vt[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn local_cone_matches_sampled_membership() {
        // Oracle: membership in the image sampled from the quadratic map
        // near zero agrees with the cone test.
        let m = c2_origin_model();
        let cone = m.local_cone();
        let rng = CounterRng::new(3, 7);
        for i in 0..2000u64 {
            let nsq = [rng.uniform_at(2 * i) * 0.2, rng.uniform_at(2 * i + 1) * 0.2];
            let p = Point(vec![0.5 * nsq[0], 0.5 * nsq[1]]);
            assert!(cone.contains(&p, 1e-9).unwrap());
        }
        assert!(!cone.contains(&Point(vec![-0.01, 0.05]), 1e-9).unwrap());
    }

    #[test]
    fn no_weight_cone_is_affine() {
        let m = LocalModel::new(
            Point(vec![1.0, 2.0]),
            1,
            vec![vec![0.0, 1.0]],
            vec![],
        )
        .unwrap();
        let cone = m.local_cone();
        assert!(cone.contains(&Point(vec![1.0, -5.0]), 1e-9).unwrap());
        assert!(!cone.contains(&Point(vec![1.01, 2.0]), 1e-9).unwrap());
    }

    #[test]
    fn half_line_cone_from_single_weight() {
        let m = LocalModel::new(Point(vec![0.0]), 0, vec![], vec![vec![2.0]]).unwrap();
        let cone = m.local_cone();
        assert!(cone.contains(&Point(vec![3.0]), 1e-9).unwrap());
        assert!(!cone.contains(&Point(vec![-0.1]), 1e-9).unwrap());
    }

    #[test]
    fn vertex_neighborhood_covered_for_quadrant() {
        let m = c2_origin_model();
        let rep = m
            .check_vertex_neighborhood(0.1, 50_000, 1, SampleConstraint::None)
            .unwrap();
        assert!(rep.covered, "uncovered: {:?}", rep.uncovered);
    }

    #[test]
    fn vertex_neighborhood_fails_when_weight_pinned() {
        let m = c2_origin_model();
        let rep = m
            .check_vertex_neighborhood(0.1, 50_000, 1, SampleConstraint::FixNormZero(1))
            .unwrap();
        assert!(!rep.covered);
        // The uncovered cells sit off the surviving axis.
        assert!(rep.uncovered.iter().any(|p| p[1] > 0.01));
    }

    #[test]
    fn no_weight_model_trivially_covered() {
        let m = LocalModel::new(
            Point(vec![0.0, 0.0]),
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![],
        )
        .unwrap();
        let rep = m
            .check_vertex_neighborhood(0.2, 20_000, 9, SampleConstraint::None)
            .unwrap();
        assert!(rep.covered);
    }

    #[test]
    fn sample_budget_guard() {
        let m = c2_origin_model();
        assert!(matches!(
            m.check_vertex_neighborhood(0.1, 10, 1, SampleConstraint::None),
            Err(Error::SampleBudgetTooSmall { .. })
        ));
    }

    #[test]
    fn openness_holds_for_standard_models() {
        let m = c2_origin_model();
        let (ok, w) = m.check_open_onto_cone(40, 2, SampleConstraint::None).unwrap();
        assert!(ok, "witness {w:?}");

        let t = LocalModel::new(
            Point(vec![0.0, 0.0]),
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![],
        )
        .unwrap();
        let (ok, _) = t.check_open_onto_cone(40, 2, SampleConstraint::None).unwrap();
        assert!(ok);
    }

    #[test]
    fn openness_fails_on_punctured_domain() {
        let m = c2_origin_model();
        let (ok, w) = m
            .check_open_onto_cone(60, 3, SampleConstraint::MinAllNorms(0.5))
            .unwrap();
        assert!(!ok);
        assert!(w.is_some());
    }

    #[test]
    fn fiber_components_of_quadrant_model() {
        let m = c2_origin_model();
        assert_eq!(
            m.local_fiber_components(&Point(vec![0.1, 0.1]), 2000, 4).unwrap(),
            1
        );
        assert_eq!(
            m.local_fiber_components(&Point(vec![0.0, 0.0]), 2000, 4).unwrap(),
            1
        );
        assert!(matches!(
            m.local_fiber_components(&Point(vec![-0.1, 0.1]), 2000, 4),
            Err(Error::EmptyFiber)
        ));
    }

    #[test]
    fn fiber_connected_with_redundant_weights() {
        // Two identical weights: the fiber over an interior value is a
        // segment in sample space, one component.
        let m = LocalModel::new(
            Point(vec![0.0]),
            0,
            vec![],
            vec![vec![1.0], vec![1.0]],
        )
        .unwrap();
        assert_eq!(
            m.local_fiber_components(&Point(vec![0.3]), 3000, 5).unwrap(),
            1
        );
    }

    #[test]
    fn cone_at_interior_sample_opens_up() {
        let m = c2_origin_model();
        let s = ModelSample {
            beta: vec![],
            norms_sq: vec![0.3, 0.0],
        };
        let cone = m.cone_at_sample(&s, 1e-9).unwrap();
        // First weight active: its direction is bidirectional now.
        assert!(cone
            .contains(&Point(vec![0.05, 0.0]), 1e-9)
            .unwrap());
        assert!(cone
            .contains(&Point(vec![0.25, 0.0]), 1e-9)
            .unwrap());
        // Second weight still pinned: downward stays outside.
        assert!(!cone
            .contains(&Point(vec![0.15, -0.01]), 1e-9)
            .unwrap());
    }
}
