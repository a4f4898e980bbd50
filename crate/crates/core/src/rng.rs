//! Counter-based deterministic random numbers.
//!
//! Every draw is a pure function of `(seed, stream, counter)`, so sampling
//! loops can be split across workers (or re-run years later) and still
//! produce identical streams. The mixer is SplitMix64 applied to a
//! Weyl-combined key; that is statistically sound for the Monte-Carlo use
//! here (coverage rasters, Haar unitaries via Gaussians).

#[derive(Clone, Copy, Debug)]
pub struct CounterRng {
    seed: u64,
    stream: u64,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const STREAM_MIX: u64 = 0xbf58_476d_1ce4_e5b9;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        CounterRng { seed, stream }
    }

    /// Derive an independent sub-stream.
    pub fn substream(&self, stream: u64) -> Self {
        CounterRng {
            seed: self.seed,
            stream: splitmix(self.stream ^ stream.wrapping_mul(STREAM_MIX)),
        }
    }

    pub fn u64_at(&self, counter: u64) -> u64 {
        let key = self
            .seed
            .wrapping_add(self.stream.wrapping_mul(STREAM_MIX))
            .wrapping_add(counter.wrapping_mul(GOLDEN));
        splitmix(splitmix(key))
    }

    /// Uniform in [0, 1).
    pub fn uniform_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range_at(&self, counter: u64, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform_at(counter)
    }

    /// Standard Gaussian pair (Box-Muller over two counters).
    pub fn gaussian_pair_at(&self, counter: u64) -> (f64, f64) {
        let u1 = self.uniform_at(counter.wrapping_mul(2));
        let u2 = self.uniform_at(counter.wrapping_mul(2).wrapping_add(1));
        // Guard log(0).
        let r = (-2.0 * (1.0 - u1).max(f64::MIN_POSITIVE).ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }

    pub fn gaussian_at(&self, counter: u64) -> f64 {
        self.gaussian_pair_at(counter).0
    }
}
