//! Property-level checks of the convex geometry kernel.

use mck_core::defaults;
use mck_core::geometry::{
    convex_hull, klee_certify, rasterize_convex_polygon, ConvexCone, Point, Verdict,
};
use mck_core::rng::CounterRng;
use proptest::prelude::*;

#[test]
fn certified_convex_regions_pass_random_segment_checks() {
    // Klee conclusion at grid scale: a certified-convex raster admits the
    // segment between any pair of occupied cell centers.
    let rng = CounterRng::new(21, 0);
    let h = 1.0 / 48.0;
    let pts: Vec<Point> = (0..7)
        .map(|k| {
            Point(vec![
                rng.range_at(2 * k, 0.1, 0.9),
                rng.range_at(2 * k + 1, 0.1, 0.9),
            ])
        })
        .collect();
    let hull = convex_hull(&pts).unwrap();
    let raster = rasterize_convex_polygon(vec![0.0, 0.0], h, &hull, true).unwrap();
    let cert = klee_certify(&raster, defaults::LOCAL_CONVEXITY_RADIUS_CELLS * h).unwrap();
    assert_eq!(cert.verdict, Verdict::Convex);

    let cells: Vec<Vec<i64>> = raster.cells.iter().cloned().collect();
    for trial in 0..1000u64 {
        let a = &cells[(rng.u64_at(10_000 + 2 * trial) % cells.len() as u64) as usize];
        let b = &cells[(rng.u64_at(10_001 + 2 * trial) % cells.len() as u64) as usize];
        let ca = raster.cell_center(a);
        let cb = raster.cell_center(b);
        // Centers of boundary cells may sit outside the represented convex
        // set; the certified guarantee is the one-ring-tolerant traversal,
        // which interior centers witness directly.
        let cells_on_segment = raster.segment_cells(&ca, &cb);
        for cell in cells_on_segment {
            let near = (-1..=1).any(|dx| {
                (-1..=1).any(|dy| raster.contains_cell(&[cell[0] + dx, cell[1] + dy]))
            });
            assert!(near, "segment {a:?}->{b:?} strayed at {cell:?}");
        }
    }
}

#[test]
fn kakutani_at_grid_scale() {
    // Same component + empty local-convexity violations => a polygonal path
    // exists and every leg passes the segment test.
    let rng = CounterRng::new(22, 0);
    let h = 1.0 / 32.0;
    for trial in 0..20u64 {
        let pts: Vec<Point> = (0..6)
            .map(|k| {
                Point(vec![
                    rng.range_at(trial * 100 + 2 * k, 0.1, 0.9),
                    rng.range_at(trial * 100 + 2 * k + 1, 0.1, 0.9),
                ])
            })
            .collect();
        let hull = convex_hull(&pts).unwrap();
        let raster = rasterize_convex_polygon(vec![0.0, 0.0], h, &hull, true).unwrap();
        assert!(raster
            .is_locally_convex(defaults::LOCAL_CONVEXITY_RADIUS_CELLS * h)
            .unwrap()
            .is_empty());
        let comps = raster.region_components();
        assert_eq!(comps.len(), 1);

        let cells: Vec<Vec<i64>> = raster.cells.iter().cloned().collect();
        let a = raster.cell_center(&cells[0]);
        let b = raster.cell_center(cells.last().unwrap());
        let path = raster.polygonal_connect(&a, &b).unwrap().unwrap();
        for w in path.windows(2) {
            assert!(raster.segment_in_region(&w[0].0, &w[1].0).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Scaling about the vertex preserves exact membership.
    #[test]
    fn cone_membership_scale_invariant(
        gx in -4i32..4, gy in 1i32..4, px in 0i32..8, py in 0i32..8, num in 1i32..5
    ) {
        let cone = ConvexCone::new(
            Point(vec![0.25, -0.5]),
            vec![],
            vec![vec![1.0, 0.0], vec![gx as f64 / 4.0, gy as f64]],
        ).unwrap();
        let p = Point(vec![0.25 + px as f64 / 8.0, -0.5 + py as f64 / 8.0]);
        let member = cone.contains_exact(&p).unwrap();
        for lambda in [0.5, 2.0, num as f64] {
            let q = Point(vec![
                0.25 + lambda * (p[0] - 0.25),
                -0.5 + lambda * (p[1] + 0.5),
            ]);
            prop_assert_eq!(cone.contains_exact(&q).unwrap(), member);
        }
    }

    // Hull round trip: rasterizations of random hulls certify convex.
    #[test]
    fn hull_raster_round_trip(seed in 0u64..40) {
        let rng = CounterRng::new(seed, 5);
        let n = 4 + (rng.u64_at(0) % 6) as usize;
        let pts: Vec<Point> = (0..n)
            .map(|k| Point(vec![
                rng.range_at(1 + 2 * k as u64, 0.05, 0.95),
                rng.range_at(2 + 2 * k as u64, 0.05, 0.95),
            ]))
            .collect();
        let hull = convex_hull(&pts).unwrap();
        let h = 1.0 / 40.0;
        let raster = rasterize_convex_polygon(vec![0.0, 0.0], h, &hull, true).unwrap();
        let cert = klee_certify(&raster, defaults::LOCAL_CONVEXITY_RADIUS_CELLS * h).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Convex);
    }

    // Hull output is a subset of the input and contains the input's
    // coordinate extremes.
    #[test]
    fn hull_vertices_subset_with_extremes(seed in 0u64..100) {
        let rng = CounterRng::new(seed, 6);
        let n = 3 + (rng.u64_at(0) % 9) as usize;
        let pts: Vec<Point> = (0..n)
            .map(|k| Point(vec![
                rng.range_at(1 + 2 * k as u64, -1.0, 1.0),
                rng.range_at(2 + 2 * k as u64, -1.0, 1.0),
            ]))
            .collect();
        let hull = convex_hull(&pts).unwrap();
        for v in &hull {
            prop_assert!(pts.contains(v));
        }
        let min_x = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        prop_assert!(hull.iter().any(|v| v[0] == min_x));
    }
}
