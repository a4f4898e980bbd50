//! The local-to-global verdict on a discrete space: hypothesis checks,
//! independently computed conclusions, and the literal consistency bit.

use serde::Serialize;

use crate::defaults;
use crate::geometry::grid::GridRegion;
use crate::geometry::klee::{klee_certify, Verdict};
use crate::geometry::point;
use crate::Result;

use super::checks::{check_lfc, check_local_convexity_data};
use super::quotient::build_quotient;
use super::space::DiscreteSpace;

#[derive(Clone, Copy, Debug)]
pub struct LgpParams {
    /// Graph-ball radius for the hypothesis checks.
    pub hop_radius: usize,
    /// Cone-relative neighborhood radius; `None` adapts per vertex.
    pub rel_radius: Option<f64>,
    /// Image raster resolution; `None` uses the median edge image step.
    pub image_h: Option<f64>,
    /// Graph-ball radii for the openness conclusion (ascending).
    pub openness_hops: [usize; 3],
}

impl Default for LgpParams {
    fn default() -> Self {
        LgpParams {
            hop_radius: 1,
            rel_radius: None,
            image_h: None,
            openness_hops: [1, 2, 3],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisBlock {
    pub lfc_ok: bool,
    pub lcd_ok: bool,
    pub closed_ok: bool,
    pub lfc_witnesses: Vec<usize>,
    pub lcd_witnesses: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConclusionBlock {
    pub fibers_connected: bool,
    pub open_onto_image: bool,
    pub image_convex: bool,
    /// Representative vertices of fiber buckets holding several classes.
    pub disconnected_fiber_witnesses: Vec<usize>,
    /// Vertices failing the openness coverage at two or more radii.
    pub openness_witnesses: Vec<usize>,
    /// Vertices failing at exactly one radius: resolution-suspect, not
    /// counted against the conclusion.
    pub resolution_suspect: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LgpVerdict {
    pub hypotheses: HypothesisBlock,
    pub conclusions: ConclusionBlock,
    /// Literal implication: all hypotheses true => all conclusions true.
    pub consistent: bool,
}

pub fn lgp_verdict(s: &DiscreteSpace, params: &LgpParams) -> Result<LgpVerdict> {
    s.validate()?;
    let lfc_witnesses = check_lfc(s, params.hop_radius)?;
    let lcd_report = check_local_convexity_data(s, params.hop_radius, params.rel_radius)?;
    let hypotheses = HypothesisBlock {
        lfc_ok: lfc_witnesses.is_empty(),
        lcd_ok: lcd_report.ok(),
        closed_ok: s.closed,
        lfc_witnesses,
        lcd_witnesses: lcd_report.failing_vertices(),
    };

    let conclusions = conclusions(s, params)?;

    let hyp_all = hypotheses.lfc_ok && hypotheses.lcd_ok && hypotheses.closed_ok;
    let concl_all =
        conclusions.fibers_connected && conclusions.open_onto_image && conclusions.image_convex;
    Ok(LgpVerdict {
        consistent: !(hyp_all && !concl_all),
        hypotheses,
        conclusions,
    })
}

fn conclusions(s: &DiscreteSpace, params: &LgpParams) -> Result<ConclusionBlock> {
    let q = build_quotient(s);

    // Fibers connected: at most one class per value bucket.
    let mut buckets: std::collections::BTreeMap<Vec<i64>, Vec<usize>> = Default::default();
    for (class, v) in q.class_values.iter().enumerate() {
        let key: Vec<i64> = v.0.iter().map(|x| (x / s.eps).round() as i64).collect();
        buckets.entry(key).or_default().push(class);
    }
    let mut disconnected_fiber_witnesses = Vec::new();
    for classes in buckets.values() {
        if classes.len() > 1 {
            for &c in classes {
                disconnected_fiber_witnesses.push(q.class_members[c][0]);
            }
        }
    }
    disconnected_fiber_witnesses.sort_unstable();
    let fibers_connected = disconnected_fiber_witnesses.is_empty();

    // Image raster shared by the openness and convexity conclusions. The
    // image of a discrete space at desk scale is its edge complex, so the
    // raster covers the straight image segment of every edge; with the cell
    // size at the largest edge step, no grid quad can swallow a cell and the
    // raster has no lattice holes.
    let h_img = params.image_h.unwrap_or_else(|| max_edge_step(s));
    let dim = s.target_dim();
    let origin: Vec<f64> = (0..dim)
        .map(|i| {
            s.f.iter()
                .map(|p| p[i])
                .fold(f64::INFINITY, f64::min)
                - h_img
        })
        .collect();
    let mut raster = GridRegion::from_points(origin, h_img, s.f.iter().map(|p| &p.0), s.closed)?;
    for &(u, v) in &s.edges {
        if u != v {
            for cell in raster.segment_cells(&s.f[u].0, &s.f[v].0) {
                raster.insert(cell);
            }
        }
    }
    raster.fill_sampling_holes(2);

    // Openness onto the image at three graph radii.
    let adj = s.adjacency();
    let idx = raster.index();
    let mut openness_witnesses = Vec::new();
    let mut resolution_suspect = Vec::new();
    let ball_cells = crate::geometry::grid::ball_offsets(dim, 3.5);
    for x in 0..s.vertices {
        let mut fails = 0usize;
        for &hops in &params.openness_hops {
            let ball = s.hop_ball(&adj, x, hops);
            let pts: Vec<&Vec<f64>> = ball.iter().map(|&u| &s.f[u].0).collect();
            if !ball_covers_image(s, &raster, &idx, x, &pts, h_img, &ball_cells) {
                fails += 1;
            }
        }
        if fails >= 2 {
            openness_witnesses.push(x);
        } else if fails == 1 {
            resolution_suspect.push(x);
        }
    }
    let open_onto_image = openness_witnesses.is_empty();

    // Convex image via the certification engine (needs the closedness
    // metadata; without it the conclusion is reported false).
    let image_convex = if s.closed {
        matches!(
            klee_certify(&raster, defaults::LOCAL_CONVEXITY_RADIUS_CELLS * h_img)?.verdict,
            Verdict::Convex
        )
    } else {
        false
    };

    Ok(ConclusionBlock {
        fibers_connected,
        open_onto_image,
        image_convex,
        disconnected_fiber_witnesses,
        openness_witnesses,
        resolution_suspect,
    })
}

fn max_edge_step(s: &DiscreteSpace) -> f64 {
    s.edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| s.f[u].dist(&s.f[v]))
        .fold(0.0f64, f64::max)
        .max(1e-12)
}

/// Does the image of a graph ball cover the occupied raster cells near the
/// center value? The coverage radius is a fraction of the ball's image
/// spread; the slack follows the sampling gap.
fn ball_covers_image(
    s: &DiscreteSpace,
    raster: &GridRegion,
    idx: &crate::geometry::grid::GridIndex,
    x: usize,
    ball_pts: &[&Vec<f64>],
    h_img: f64,
    probe_offsets: &[Vec<i64>],
) -> bool {
    let center = &s.f[x].0;
    let spread = ball_pts
        .iter()
        .map(|p| point::dist(p, center))
        .fold(0.0f64, f64::max);
    if spread == 0.0 {
        return true;
    }
    let r = defaults::BALL_COVER_EXTENT_FRACTION * spread;

    let mut max_nn: f64 = 0.0;
    for a in ball_pts {
        let mut nn = f64::INFINITY;
        for b in ball_pts {
            if !std::ptr::eq(*a, *b) {
                let d = point::dist(a, b);
                if d > 0.0 {
                    nn = nn.min(d);
                }
            }
        }
        if nn.is_finite() {
            max_nn = max_nn.max(nn);
        }
    }
    let slack = (defaults::COVER_GAP_FACTOR * (center.len() as f64).sqrt() * max_nn).max(h_img);

    // Required: occupied raster cells near the center value, probed over a
    // fixed neighborhood of the center's cell.
    let center_cell = raster.cell_of(center);
    let reach = ((r / h_img).ceil() as i64) + 1;
    for o in probe_offsets {
        if o.iter().any(|v| v.abs() > reach) {
            continue;
        }
        let cell: Vec<i64> = center_cell.iter().zip(o).map(|(a, b)| a + b).collect();
        if !idx.contains(&cell) {
            continue;
        }
        let cc = raster.cell_center(&cell);
        if point::dist(&cc, center) > r {
            continue;
        }
        let covered = ball_pts
            .iter()
            .any(|p| p.iter().zip(&cc).all(|(a, b)| (a - b).abs() <= slack));
        if !covered {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::cone::ConvexCone;
    use crate::geometry::point::Point;
    use crate::scenes::circle_height_space;

    #[test]
    fn single_vertex_space_trivially_consistent() {
        let s = DiscreteSpace {
            vertices: 1,
            edges: vec![],
            f: vec![Point(vec![0.25])],
            cones: Some(vec![ConvexCone {
                vertex: Point(vec![0.25]),
                subspace: vec![],
                generators: vec![],
            }]),
            closed: true,
            eps: 0.01,
        };
        let v = lgp_verdict(&s, &LgpParams::default()).unwrap();
        assert!(v.hypotheses.lfc_ok && v.hypotheses.lcd_ok && v.hypotheses.closed_ok);
        assert!(v.conclusions.fibers_connected);
        assert!(v.conclusions.open_onto_image);
        assert!(v.conclusions.image_convex);
        assert!(v.consistent);
    }

    #[test]
    fn circle_height_verdict() {
        let s = circle_height_space(64);
        let v = lgp_verdict(&s, &LgpParams::default()).unwrap();
        assert!(!v.hypotheses.lfc_ok);
        assert_eq!(v.hypotheses.lfc_witnesses, vec![0, 32]);
        assert!(v.hypotheses.lcd_ok, "{:?}", v.hypotheses.lcd_witnesses);
        // Conclusion (i) fails independently; the implication stays vacuous.
        assert!(!v.conclusions.fibers_connected);
        assert!(v.consistent);
    }
}
