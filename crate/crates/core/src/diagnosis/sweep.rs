//! Weyl-chamber sweep for unitary scenes: project a Hermitian momentum value
//! to its decreasingly sorted spectrum.

use crate::defaults;
use crate::geometry::point::Point;
use crate::linalg::{hermitian_eigenvalues, CMat};
use crate::{Error, Result};

use super::scene::GroupTag;

/// Eigenvalues of a Hermitian matrix sorted decreasingly (the positive
/// Weyl-chamber representative). Rejects torus scenes and non-Hermitian
/// input.
pub fn sweep(group: GroupTag, m: &CMat) -> Result<Point> {
    if group != GroupTag::UnitaryN {
        return Err(Error::InvalidArgument(
            "sweep applies to unitary-group scenes only",
        ));
    }
    let mut eig = hermitian_eigenvalues(m, defaults::HERMITIAN_ASYMMETRY_TOL)?;
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(Point(eig))
}
