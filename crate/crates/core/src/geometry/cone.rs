//! Polyhedral convex cones: vertex + linear part + nonnegative generator span.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::point::{self, Point};
use crate::lp::{self, feasible_nonneg};
use crate::{Error, Result};

/// Membership set: `{ vertex + s + sum a_i g_i : s in span(subspace), a_i >= 0 }`.
/// The vertex itself always belongs to the cone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexCone {
    pub vertex: Point,
    #[serde(default)]
    pub subspace: Vec<Vec<f64>>,
    #[serde(default)]
    pub generators: Vec<Vec<f64>>,
}

impl ConvexCone {
    pub fn new(vertex: Point, subspace: Vec<Vec<f64>>, generators: Vec<Vec<f64>>) -> Result<Self> {
        let cone = ConvexCone {
            vertex,
            subspace,
            generators,
        };
        cone.validate()?;
        Ok(cone)
    }

    pub fn dim(&self) -> usize {
        self.vertex.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for v in self.subspace.iter().chain(&self.generators) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if point::norm(g) == 0.0 {
                return Err(Error::DegenerateGenerator(i));
            }
        }
        if point::rank(&self.subspace, 1e-12) < self.subspace.len() {
            return Err(Error::InvalidScene(
                "subspace basis is linearly dependent".into(),
            ));
        }
        Ok(())
    }

    /// Pure translate: same directions, new vertex.
    pub fn at_vertex(&self, vertex: Point) -> ConvexCone {
        ConvexCone {
            vertex,
            subspace: self.subspace.clone(),
            generators: self.generators.clone(),
        }
    }

    fn columns(&self) -> Vec<Vec<f64>> {
        // [S | -S | G] so the linear part decomposes into nonnegative columns.
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(2 * self.subspace.len() + self.generators.len());
        cols.extend(self.subspace.iter().cloned());
        cols.extend(self.subspace.iter().map(|s| point::scale(s, -1.0)));
        cols.extend(self.generators.iter().cloned());
        cols
    }

    /// Float-mode membership with tolerance `tol` on nonnegativity.
    pub fn contains(&self, p: &Point, tol: f64) -> Result<bool> {
        self.check_point(p)?;
        if tol < 0.0 {
            return Err(Error::NonFiniteValue(tol));
        }
        let cols = self.columns();
        let n = self.dim();
        let a: Vec<Vec<f64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let b = point::sub(&p.0, &self.vertex.0);
        Ok(feasible_nonneg(&a, &b, &tol).is_feasible())
    }

    /// Exact-mode membership: every float is expanded to its exact binary
    /// rational and the feasibility problem is solved with zero tolerance.
    pub fn contains_exact(&self, p: &Point) -> Result<bool> {
        self.check_point(p)?;
        let rat = |x: f64| lp::rational_of(x).ok_or(Error::NonFiniteValue(x));
        let cols = self.columns();
        let n = self.dim();
        let mut a: Vec<Vec<BigRational>> = vec![Vec::with_capacity(cols.len()); n];
        for c in &cols {
            for (i, row) in a.iter_mut().enumerate() {
                row.push(rat(c[i])?);
            }
        }
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            b.push(rat(p[i] - self.vertex[i])?);
        }
        Ok(feasible_nonneg(&a, &b, &BigRational::zero()).is_feasible())
    }

    /// Orthonormal basis of the spanned directions (subspace plus generators).
    pub fn span_basis(&self) -> Vec<Vec<f64>> {
        let mut dirs = self.subspace.clone();
        dirs.extend(self.generators.iter().cloned());
        point::orthonormal_basis(&dirs, 1e-10)
    }

    /// Membership of `p` with depth `slack`: `p` and its probes along the
    /// span basis must all lie in the cone. A conservative proxy for
    /// "distance to the cone boundary >= slack" used by coverage checks.
    pub fn contains_with_depth(&self, p: &Point, slack: f64, tol: f64) -> Result<bool> {
        if !self.contains(p, tol)? {
            return Ok(false);
        }
        for b in self.span_basis() {
            for sgn in [1.0, -1.0] {
                let mut q = p.0.clone();
                point::axpy(&mut q, sgn * slack, &b);
                if !self.contains(&Point(q), tol)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        Ok(())
    }
}
