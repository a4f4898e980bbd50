//! Points and small dense vector helpers in the dual space (dimension <= 8).

use serde::{Deserialize, Serialize};

/// A point of the target vector space, stored as bare coordinates.
#[derive(Clone, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        dist(&self.0, &other.0)
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Distance from `p` to the segment [a, b].
pub fn dist_to_segment(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let denom = dot(&ab, &ab);
    if denom == 0.0 {
        return dist(p, a);
    }
    let t = (dot(&sub(p, a), &ab) / denom).clamp(0.0, 1.0);
    let mut q = a.to_vec();
    axpy(&mut q, t, &ab);
    dist(p, &q)
}

/// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt).
/// Vectors contributing less than `tol` of their norm are dropped.
pub fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
        let n = norm(&w);
        if n > tol * norm(v).max(1.0) {
            basis.push(scale(&w, 1.0 / n));
        }
    }
    basis
}

/// Rank of a small float matrix given as rows.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    orthonormal_basis(rows, tol).len()
}
