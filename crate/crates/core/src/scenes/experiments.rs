//! Classical convexity oracles as reproducible experiments: isospectral
//! diagonals against the permutation hull, toric images against the
//! fixed-point hull, and the 2x2 spectral-sum interval.

use serde::Serialize;

use crate::defaults;
use crate::diagnosis::scene::Scene;
use crate::geometry::hull::{convex_hull, hausdorff_convex};
use crate::geometry::klee::{klee_certify, Verdict};
use crate::geometry::point::Point;
use crate::geometry::grid::GridRegion;
use crate::linalg::{conjugated_diag, haar_unitary, hermitian_eigenvalues, isospectral_diagonal};
use crate::lp::in_convex_hull;
use crate::rng::CounterRng;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub trials: usize,
    /// Failures counted against the stated tolerance only.
    pub failures: usize,
    pub max_violation: f64,
    /// Largest deviation from the exact trace identity across trials.
    pub trace_error_max: f64,
    pub artifacts: Vec<String>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    fn new(trials: usize) -> Self {
        ExperimentReport {
            trials,
            failures: 0,
            max_violation: 0.0,
            trace_error_max: 0.0,
            artifacts: vec![],
            notes: vec![],
        }
    }
}

/// Convex hull of all coordinate permutations of a spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct WeylOrbitHull {
    pub lambda: Vec<f64>,
    pub hull_vertices: Vec<Point>,
}

impl WeylOrbitHull {
    pub fn new(lambda: &[f64]) -> WeylOrbitHull {
        let mut perms: Vec<Vec<f64>> = Vec::new();
        let mut work = lambda.to_vec();
        permute_into(&mut work, lambda.len(), &mut perms);
        perms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        perms.dedup();
        WeylOrbitHull {
            lambda: lambda.to_vec(),
            hull_vertices: perms.into_iter().map(Point).collect(),
        }
    }

    /// LP membership of a point in the hull.
    pub fn contains(&self, p: &[f64], tol: f64) -> (bool, f64) {
        let verts: Vec<Vec<f64>> = self.hull_vertices.iter().map(|v| v.0.clone()).collect();
        let feas = in_convex_hull(&verts, p, tol);
        (feas.is_feasible(), feas.residual)
    }
}

fn permute_into(work: &mut Vec<f64>, k: usize, out: &mut Vec<Vec<f64>>) {
    if k <= 1 {
        out.push(work.clone());
        return;
    }
    for i in 0..k {
        permute_into(work, k - 1, out);
        if k % 2 == 0 {
            work.swap(i, k - 1);
        } else {
            work.swap(0, k - 1);
        }
    }
}

/// Diagonals of an isospectral family stay in the permutation hull: draw
/// Haar unitaries, conjugate the spectrum, and test the diagonal by linear
/// feasibility at tolerance `tol`.
pub fn schur_horn_experiment(
    lambda: &[f64],
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<ExperimentReport> {
    if lambda.is_empty() {
        return Err(Error::EmptyInput("spectrum must be nonempty"));
    }
    let mut sorted = lambda.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut report = ExperimentReport::new(trials);
    if sorted != lambda {
        report
            .notes
            .push("spectrum was not sorted decreasingly; sorted internally".into());
    }
    let hull = WeylOrbitHull::new(&sorted);
    let spectrum_sum: f64 = sorted.iter().sum();
    let n = sorted.len();
    let rng = CounterRng::new(seed, 0x5c);
    for t in 0..trials {
        let u = haar_unitary(n, &rng, (t * n * n * 2) as u64);
        let d = isospectral_diagonal(&u, &sorted);
        let trace_err = (d.iter().sum::<f64>() - spectrum_sum).abs();
        report.trace_error_max = report.trace_error_max.max(trace_err);
        let (inside, residual) = hull.contains(&d, tol);
        report.max_violation = report.max_violation.max(residual);
        if !inside {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// Sampled toric image against the fixed-point hull: the hull of sampled
/// momentum values must match the hull of the fixed-point images within
/// `2h` (two-sided Hausdorff), and the image raster must certify convex.
pub fn toric_polytope_experiment(
    scene: &Scene,
    n_samples: usize,
    h: f64,
    seed: u64,
) -> Result<(ExperimentReport, Vec<Point>)> {
    if scene.fixed_points.is_empty() {
        return Err(Error::InvalidScene(
            "toric experiment needs fixed-point images".into(),
        ));
    }
    let rng = CounterRng::new(seed, 0x7e);
    let mut report = ExperimentReport::new(n_samples);
    let mut points: Vec<Point> = Vec::with_capacity(n_samples);
    let (lo, hi) = scene.image_box.clone();
    let mut raster = GridRegion::new(lo.clone(), h, true)?;

    let mut accepted = 0usize;
    let mut i = 0u64;
    let budget = (n_samples as u64).saturating_mul(100).max(10_000);
    while accepted < n_samples && i < budget {
        let idx = i;
        i += 1;
        let Some(s) = scene.sample(&rng, idx) else {
            continue;
        };
        accepted += 1;
        let v = scene.momentum(&s);
        let inside = v
            .0
            .iter()
            .zip(lo.iter().zip(&hi))
            .all(|(x, (a, b))| *x >= *a && *x <= *b);
        if inside {
            let cell = raster.cell_of(&v.0);
            raster.insert(cell);
        }
        points.push(v);
    }

    let sampled_hull = convex_hull(&points)?;
    let exact_hull = convex_hull(&scene.fixed_points)?;
    let hd = hausdorff_convex(&sampled_hull, &exact_hull);
    report.max_violation = hd;
    if hd > 2.0 * h {
        report.failures += 1;
        report.notes.push(format!(
            "hull Hausdorff distance {hd:.5} exceeds 2h = {:.5}",
            2.0 * h
        ));
    }

    raster.fill_sampling_holes(2);
    let cert = klee_certify(&raster, defaults::LOCAL_CONVEXITY_RADIUS_CELLS * h)?;
    if cert.verdict != Verdict::Convex {
        report.failures += 1;
        report
            .notes
            .push(format!("image raster verdict {:?}", cert.verdict));
    }
    Ok((report, sampled_hull))
}

/// The 2x2 spectral interval: eigenvalues of A + B over two isospectral
/// families. Checks exact trace conservation per trial and that the top
/// eigenvalue fills the classical interval with no gap larger than
/// `tol_fill`.
pub fn horn_interval_experiment(
    a: &[f64; 2],
    b: &[f64; 2],
    trials: usize,
    tol_fill: f64,
    seed: u64,
) -> Result<ExperimentReport> {
    for s in [a, b] {
        if s[0] < s[1] {
            return Err(Error::NotSortedDecreasing(s.to_vec()));
        }
    }
    let rng = CounterRng::new(seed, 0x8a);
    let mut report = ExperimentReport::new(trials);
    let total = a[0] + a[1] + b[0] + b[1];
    let lo = (a[0] + b[1]).max(a[1] + b[0]);
    let hi = a[0] + b[0];
    let mut tops: Vec<f64> = Vec::with_capacity(trials);

    for t in 0..trials {
        let base = (t * 32) as u64;
        let u1 = haar_unitary(2, &rng, base);
        let u2 = haar_unitary(2, &rng, base + 16);
        let m = conjugated_diag(&u1, a).add(&conjugated_diag(&u2, b));
        let mut eig = hermitian_eigenvalues(&m, 1e-9)?;
        eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let trace_err = (eig[0] + eig[1] - total).abs();
        report.trace_error_max = report.trace_error_max.max(trace_err);
        if trace_err > defaults::TRACE_IDENTITY_TOL {
            report.failures += 1;
        }
        tops.push(eig[0]);
    }

    tops.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut gap: f64 = 0.0;
    if hi - lo > 0.0 {
        gap = gap.max(tops.first().map_or(hi - lo, |t| t - lo));
        gap = gap.max(tops.last().map_or(hi - lo, |t| hi - t));
        for w in tops.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
    } else {
        // Degenerate interval: every trial must land on the single point.
        for t in &tops {
            gap = gap.max((t - hi).abs());
        }
    }
    report.max_violation = gap;
    if gap > tol_fill {
        report.failures += 1;
        report
            .notes
            .push(format!("largest interval gap {gap:.5} exceeds {tol_fill}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orbit_hull_dedup_and_hyperplane() {
        let hull = WeylOrbitHull::new(&[2.0, 1.0, 0.0]);
        assert_eq!(hull.hull_vertices.len(), 6);
        for v in &hull.hull_vertices {
            assert!((v.0.iter().sum::<f64>() - 3.0).abs() < 1e-15);
        }
        let degenerate = WeylOrbitHull::new(&[1.0, 1.0, 1.0]);
        assert_eq!(degenerate.hull_vertices.len(), 1);
    }

    #[test]
    fn two_by_two_diagonal_fills_segment() {
        // diag(U diag(1,0) U*) = (c, 1-c) with c in [0,1].
        let rep = schur_horn_experiment(&[1.0, 0.0], 500, 1e-9, 3).unwrap();
        assert_eq!(rep.failures, 0);
        assert!(rep.trace_error_max < 1e-12);
    }

    #[test]
    fn constant_spectrum_is_a_point() {
        let rep = schur_horn_experiment(&[0.5, 0.5, 0.5], 100, 1e-9, 4).unwrap();
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn unsorted_spectrum_noted() {
        let rep = schur_horn_experiment(&[0.0, 1.0], 10, 1e-9, 5).unwrap();
        assert!(!rep.notes.is_empty());
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn horn_closed_form_oracle() {
        // For a = b = (1,0): A + B = uu* + vv*, and the top eigenvalue is
        // 1 + |<u, v>| by the two-projector closed form. Check the
        // experiment's spectra against the oracle on the same unitaries.
        let rng = CounterRng::new(9, 0x8a);
        for t in 0..50u64 {
            let base = t * 32;
            let u1 = haar_unitary(2, &rng, base);
            let u2 = haar_unitary(2, &rng, base + 16);
            let m = conjugated_diag(&u1, &[1.0, 0.0]).add(&conjugated_diag(&u2, &[1.0, 0.0]));
            let mut eig = hermitian_eigenvalues(&m, 1e-9).unwrap();
            eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
            // First columns are the rank-one directions.
            let inner = (0..2)
                .map(|i| u1.at(i, 0).conj() * u2.at(i, 0))
                .sum::<num_complex::Complex64>()
                .norm();
            assert!((eig[0] - (1.0 + inner)).abs() < 1e-10);
            assert!((eig[1] - (1.0 - inner)).abs() < 1e-10);
        }
    }

    #[test]
    fn horn_interval_filled_for_projectors() {
        let rep = horn_interval_experiment(&[1.0, 0.0], &[1.0, 0.0], 4000, 0.05, 11).unwrap();
        assert_eq!(rep.failures, 0, "{:?}", rep.notes);
        assert!(rep.trace_error_max <= defaults::TRACE_IDENTITY_TOL);
    }

    #[test]
    fn horn_degenerate_orbits() {
        // B = 0: single point at a.
        let rep = horn_interval_experiment(&[1.0, 0.0], &[0.0, 0.0], 200, 1e-9, 12).unwrap();
        assert_eq!(rep.failures, 0);
        // a = (1,1): scalar shift of b.
        let rep = horn_interval_experiment(&[1.0, 1.0], &[1.0, 0.0], 200, 1e-9, 13).unwrap();
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn horn_unsorted_rejected() {
        assert!(horn_interval_experiment(&[0.0, 1.0], &[1.0, 0.0], 10, 0.05, 1).is_err());
    }
}
