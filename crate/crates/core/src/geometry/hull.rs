//! Convex hulls in dimension 1..=4 with a deterministic (lexicographic)
//! vertex order. Gift wrapping in the plane; dimensions 3 and 4 run an
//! incremental extreme-point filter backed by exact-tolerance LP membership.

use super::point::{self, Point};
use crate::lp::in_convex_hull;
use crate::{Error, Result};

/// Minimal vertex set of the convex hull of `points`.
pub fn convex_hull(points: &[Point]) -> Result<Vec<Point>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("convex_hull needs at least one point"));
    }
    let n = points[0].dim();
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }
    let mut pts: Vec<Vec<f64>> = points.iter().map(|p| p.0.clone()).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();

    let mut hull = match n {
        1 => {
            let lo = pts.first().unwrap().clone();
            let hi = pts.last().unwrap().clone();
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        }
        2 => gift_wrap_2d(&pts),
        3 | 4 => extreme_filter(&pts),
        d => return Err(Error::UnsupportedDimension(d)),
    };
    hull.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(hull.into_iter().map(Point).collect())
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn gift_wrap_2d(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let scale = pts
        .iter()
        .flat_map(|p| p.iter().map(|x| x.abs()))
        .fold(1.0f64, f64::max);
    let eps = 1e-12 * scale * scale;

    // Start at the lexicographic minimum, which is always a vertex.
    let start = 0usize;
    let mut hull_idx = vec![start];
    let mut current = start;
    loop {
        let mut candidate = if current == 0 { 1 } else { 0 };
        for i in 0..pts.len() {
            if i == current {
                continue;
            }
            let c = cross(&pts[current], &pts[candidate], &pts[i]);
            if c < -eps {
                candidate = i;
            } else if c.abs() <= eps {
                // Collinear: keep the farthest so interior points drop out.
                if point::dist(&pts[current], &pts[i])
                    > point::dist(&pts[current], &pts[candidate])
                {
                    candidate = i;
                }
            }
        }
        if candidate == start {
            break;
        }
        hull_idx.push(candidate);
        current = candidate;
        if hull_idx.len() > pts.len() {
            break; // numeric safety net; cannot wrap more vertices than points
        }
    }
    hull_idx.into_iter().map(|i| pts[i].clone()).collect()
}

/// Incremental extreme-point filter: a point is a hull vertex iff it is not
/// in the convex hull of the others. Candidates are maintained and re-pruned
/// as points stream in.
fn extreme_filter(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    const TOL: f64 = 1e-9;
    let mut verts: Vec<Vec<f64>> = Vec::new();
    for p in pts {
        if verts.len() >= verts[0..0].len() + 1 && in_convex_hull(&verts, p, TOL).is_feasible() {
            continue;
        }
        verts.push(p.clone());
        // Re-prune: earlier vertices may now be interior.
        let mut i = 0;
        while i < verts.len() {
            let mut others = verts.clone();
            let v = others.remove(i);
            if !others.is_empty() && in_convex_hull(&others, &v, TOL).is_feasible() {
                verts.remove(i);
            } else {
                i += 1;
            }
        }
    }
    verts
}

/// Vertices of a convex polygon ordered counterclockwise around the centroid.
pub fn order_ccw(verts: &[Point]) -> Vec<Point> {
    if verts.len() <= 2 {
        return verts.to_vec();
    }
    let n = verts.len() as f64;
    let cx = verts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = verts.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut v = verts.to_vec();
    v.sort_by(|a, b| {
        let aa = (a[1] - cy).atan2(a[0] - cx);
        let ab = (b[1] - cy).atan2(b[0] - cx);
        aa.partial_cmp(&ab).unwrap()
    });
    v
}

/// Signed depth of `p` inside the CCW polygon: minimum distance to an edge
/// line, negative when outside some edge. Degenerate polygons give
/// `-dist_to_nearest_vertex_or_edge`.
pub fn depth_in_convex_polygon(poly_ccw: &[Point], p: &[f64]) -> f64 {
    match poly_ccw.len() {
        0 => f64::NEG_INFINITY,
        1 => -point::dist(p, &poly_ccw[0].0),
        2 => -point::dist_to_segment(p, &poly_ccw[0].0, &poly_ccw[1].0),
        _ => {
            let mut depth = f64::INFINITY;
            let k = poly_ccw.len();
            for i in 0..k {
                let a = &poly_ccw[i].0;
                let b = &poly_ccw[(i + 1) % k].0;
                let len = point::dist(a, b);
                if len == 0.0 {
                    continue;
                }
                let signed = cross(a, b, p) / len;
                depth = depth.min(signed);
            }
            depth
        }
    }
}

/// Distance from `p` to a convex polygon (zero inside).
pub fn dist_to_convex_polygon(poly_ccw: &[Point], p: &[f64]) -> f64 {
    let d = depth_in_convex_polygon(poly_ccw, p);
    if d >= 0.0 {
        0.0
    } else {
        match poly_ccw.len() {
            1 => point::dist(p, &poly_ccw[0].0),
            2 => point::dist_to_segment(p, &poly_ccw[0].0, &poly_ccw[1].0),
            _ => {
                let k = poly_ccw.len();
                (0..k)
                    .map(|i| {
                        point::dist_to_segment(p, &poly_ccw[i].0, &poly_ccw[(i + 1) % k].0)
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Two-sided Hausdorff distance between convex polygons given by vertices.
/// For convex sets the supremum is attained at vertices.
pub fn hausdorff_convex(a: &[Point], b: &[Point]) -> f64 {
    let a_ccw = order_ccw(a);
    let b_ccw = order_ccw(b);
    let d_ab = a_ccw
        .iter()
        .map(|v| dist_to_convex_polygon(&b_ccw, &v.0))
        .fold(0.0f64, f64::max);
    let d_ba = b_ccw
        .iter()
        .map(|v| dist_to_convex_polygon(&a_ccw, &v.0))
        .fold(0.0f64, f64::max);
    d_ab.max(d_ba)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point(vec![x, y])).collect()
    }

    #[test]
    fn drops_interior_point() {
        let hull =
            convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2)])).unwrap();
        assert_eq!(hull, pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]));
    }

    #[test]
    fn singleton() {
        let hull = convex_hull(&pts(&[(0.0, 0.0)])).unwrap();
        assert_eq!(hull, pts(&[(0.0, 0.0)]));
    }

    #[test]
    fn two_permutations_both_vertices() {
        let hull = convex_hull(&pts(&[(3.0, 1.0), (1.0, 3.0)])).unwrap();
        assert_eq!(hull.len(), 2);
    }

    #[test]
    fn collinear_points_reduce_to_endpoints() {
        let hull = convex_hull(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (0.5, 0.5)])).unwrap();
        assert_eq!(hull, pts(&[(0.0, 0.0), (2.0, 2.0)]));
    }

    #[test]
    fn empty_input_is_error() {
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn three_d_extreme_filter() {
        let cube: Vec<Point> = (0..8)
            .map(|i| {
                Point(vec![
                    (i & 1) as f64,
                    ((i >> 1) & 1) as f64,
                    ((i >> 2) & 1) as f64,
                ])
            })
            .chain(std::iter::once(Point(vec![0.5, 0.5, 0.5])))
            .collect();
        let hull = convex_hull(&cube).unwrap();
        assert_eq!(hull.len(), 8);
        assert!(!hull.iter().any(|p| p.0 == vec![0.5, 0.5, 0.5]));
    }

    #[test]
    fn hausdorff_of_shifted_square() {
        let a = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let b = pts(&[(0.1, 0.0), (1.0, 0.0), (1.0, 1.0), (0.1, 1.0)]);
        let d = hausdorff_convex(&a, &b);
        assert!((d - 0.1).abs() < 1e-12, "{d}");
    }
}
