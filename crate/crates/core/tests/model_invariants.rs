//! Model-level invariants: cone containment of the momentum image, and the
//! neighborhood/openness checks holding unconditionally on random models.

use mck_core::geometry::Point;
use mck_core::local_model::{LocalModel, ModelSample, SampleConstraint};
use mck_core::rng::CounterRng;

fn random_model(seed: u64) -> LocalModel {
    let rng = CounterRng::new(seed, 0x33);
    let dim = 2 + (rng.u64_at(0) % 2) as usize; // target dimension 2 or 3
    let dim_t1 = (rng.u64_at(1) % 2) as usize; // 0 or 1 translation directions
    let n_weights = 1 + (rng.u64_at(2) % 4) as usize; // 1..=4 weights

    // Translation block along the last axes; weights in the leading block
    // with strictly positive leading coordinate so the cone is pointed on
    // that block.
    let mut t0_perp = Vec::new();
    for j in 0..dim_t1 {
        let mut v = vec![0.0; dim];
        v[dim - 1 - j] = 1.0;
        t0_perp.push(v);
    }
    let mut weights = Vec::new();
    for w in 0..n_weights {
        let mut v = vec![0.0; dim];
        v[0] = rng.range_at(10 + w as u64, 0.4, 1.4);
        for (k, slot) in v.iter_mut().enumerate().take(dim - dim_t1).skip(1) {
            *slot = rng.range_at(100 + (w * dim + k) as u64, -0.8, 0.8);
        }
        weights.push(v);
    }
    let base: Vec<f64> = (0..dim).map(|k| rng.range_at(500 + k as u64, -0.5, 0.5)).collect();
    LocalModel::new(Point(base), dim_t1, t0_perp, weights).unwrap()
}

#[test]
fn momentum_image_contained_in_cone() {
    for seed in 0..8u64 {
        let model = random_model(seed);
        let cone = model.local_cone();
        let rng = CounterRng::new(seed, 0x44);
        for i in 0..2000u64 {
            let s = model.default_sample(&rng, i, SampleConstraint::None);
            let v = model.momentum(&s).unwrap();
            assert!(
                cone.contains(&v, 1e-9).unwrap(),
                "seed {seed} sample {i}: {v:?} escaped"
            );
        }
    }
}

#[test]
fn momentum_image_contained_in_cone_exact_mode() {
    // Exact-mode containment needs an exactly representable pipeline: one
    // axis weight per coordinate keeps every momentum coordinate a single
    // float product (halving is exact), so the rational decomposition is
    // literal. Skewed float weights round the coordinate sums off a
    // lower-dimensional cone, which exact arithmetic rightly rejects.
    let rng = CounterRng::new(77, 0);
    for seed in 0..4u64 {
        // Power-of-two weight scales keep every product exact.
        let scale0 = 0.25 * (1u64 << (rng.u64_at(seed) % 4)) as f64;
        let scale1 = 0.25 * (1u64 << (rng.u64_at(100 + seed) % 4)) as f64;
        let model = LocalModel::new(
            Point(vec![0.5, -0.25]),
            0,
            vec![],
            vec![vec![scale0, 0.0], vec![0.0, scale1]],
        )
        .unwrap();
        let cone = model.local_cone();
        let sample_rng = CounterRng::new(seed, 0x45);
        for i in 0..5000u64 {
            let s = model.default_sample(&sample_rng, i, SampleConstraint::None);
            let v = model.momentum(&s).unwrap();
            assert!(cone.contains_exact(&v).unwrap(), "seed {seed} sample {i}");
        }
    }
}

#[test]
fn momentum_depends_on_norms_only() {
    // The formula consumes squared norms; two samples with equal norms give
    // identical values no matter what produced them.
    let model = random_model(3);
    let s1 = ModelSample {
        beta: vec![0.25; model.dim_t1],
        norms_sq: vec![0.5; model.weights.len()],
    };
    let s2 = s1.clone();
    assert_eq!(model.momentum(&s1).unwrap(), model.momentum(&s2).unwrap());
}

#[test]
fn neighborhood_and_openness_hold_for_random_models() {
    // Both checks must return true for every model drawn from random weight
    // sets of size <= 4 in dimension <= 3.
    for seed in 0..10u64 {
        let model = random_model(seed);
        let radius = 0.35;
        let rep = model
            .check_vertex_neighborhood(radius, 200_000, seed + 1, SampleConstraint::None)
            .unwrap();
        assert!(
            rep.covered,
            "seed {seed}: uncovered {:?} of {} required",
            rep.uncovered.len(),
            rep.required_cells
        );
        let (open, witness) = model
            .check_open_onto_cone(25, seed + 1, SampleConstraint::None)
            .unwrap();
        assert!(open, "seed {seed}: witness {witness:?}");
    }
}

#[test]
fn empty_weight_cone_reduces_to_subspace_feasibility() {
    let model = LocalModel::new(
        Point(vec![0.5, 0.5, 0.0]),
        2,
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        vec![],
    )
    .unwrap();
    let cone = model.local_cone();
    assert!(cone.contains(&Point(vec![9.0, -3.0, 0.0]), 1e-9).unwrap());
    assert!(!cone.contains(&Point(vec![0.5, 0.5, 0.1]), 1e-9).unwrap());
}
