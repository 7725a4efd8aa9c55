//! Seeded random instances for experiments and property checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{validate_instance, PolyLike};

/// Ranges for [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceRanges {
    pub mult_lo: f64,
    pub mult_hi: f64,
    pub root_lo: f64,
    pub root_hi: f64,
    /// Draws whose smallest gap is below this fraction of the root range
    /// are rejected.
    pub min_rel_gap: f64,
}

impl Default for InstanceRanges {
    fn default() -> Self {
        Self {
            mult_lo: 0.1,
            mult_hi: 10.0,
            root_lo: -10.0,
            root_hi: 10.0,
            min_rel_gap: 1e-6,
        }
    }
}

/// A generator whose stream depends only on `(seed, stream)`, so that sample
/// `i` can be produced independently of every other sample.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_mults<R: Rng + ?Sized>(rng: &mut R, n_roots: usize, ranges: &InstanceRanges) -> Vec<f64> {
    (0..n_roots)
        .map(|_| rng.gen_range(ranges.mult_lo..=ranges.mult_hi))
        .collect()
}

/// Sorted uniform roots, resampled until every gap is large enough.
pub fn random_roots<R: Rng + ?Sized>(rng: &mut R, n_roots: usize, ranges: &InstanceRanges) -> Vec<f64> {
    let span = ranges.root_hi - ranges.root_lo;
    loop {
        let mut roots: Vec<f64> = (0..n_roots)
            .map(|_| rng.gen_range(ranges.root_lo..ranges.root_hi))
            .collect();
        roots.sort_by(f64::total_cmp);
        if roots.windows(2).all(|w| w[1] - w[0] > ranges.min_rel_gap * span) {
            return roots;
        }
    }
}

/// Random multiplicities and roots.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n_roots: usize, ranges: &InstanceRanges) -> PolyLike {
    let mults = random_mults(rng, n_roots, ranges);
    let roots = random_roots(rng, n_roots, ranges);
    validate_instance(&roots, &mults).expect("sampled roots are separated and mults positive")
}
