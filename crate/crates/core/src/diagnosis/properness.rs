//! Properness probe for one momentum component: along every escape path the
//! pairing with a fixed direction must keep growing. A bounded pairing on an
//! escaping path is a properness witness against closedness of the map.

use serde::Serialize;

use crate::geometry::point;
use crate::rng::CounterRng;
use crate::Result;

use super::scene::Scene;

#[derive(Clone, Debug, Serialize)]
pub struct EscapeWitness {
    pub path: String,
    /// |<J, xi>| along the escape stages.
    pub pairing: Vec<f64>,
}

/// Statistical properness of `<J, xi>`: for every escape probe (norm rays
/// plus paths into any removed set), the pairing at the final stage must
/// dominate the mid-stage value by a fixed growth factor. Used to set the
/// closed-map metadata handed to the local-to-global engine.
pub fn prato_properness_check(
    scene: &Scene,
    xi: &[f64],
    escape_radius: f64,
    n_paths: usize,
    seed: u64,
) -> Result<(bool, Option<EscapeWitness>)> {
    const GROWTH: f64 = 1.5;
    const FLOOR: f64 = 0.05;

    let rng = CounterRng::new(seed, 0x9e);
    for path in scene.escape_paths(&rng, n_paths, escape_radius) {
        let pairing: Vec<f64> = path
            .stages
            .iter()
            .map(|s| point::dot(&scene.momentum(s).0, xi).abs())
            .collect();
        if pairing.is_empty() {
            continue;
        }
        let last = *pairing.last().unwrap();
        let mid = pairing[pairing.len() / 2];
        if !(last > FLOOR && last >= GROWTH * mid.max(FLOOR / GROWTH)) {
            return Ok((
                false,
                Some(EscapeWitness {
                    path: path.label,
                    pairing,
                }),
            ));
        }
    }
    Ok((true, None))
}
