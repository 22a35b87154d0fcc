//! Seed derivation.
//!
//! Every random quantity in an experiment is drawn from a stream whose seed
//! is a pure function of the master seed and a path of labels (trial index,
//! policy index, ...). Results therefore never depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every seeded stream in the crate.
pub type SimRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `parent` and a label.
#[inline]
pub fn derive(parent: u64, label: u64) -> u64 {
    mix64(mix64(parent.wrapping_add(GOLDEN)) ^ label.wrapping_mul(GOLDEN).rotate_left(17))
}

/// Derives a child seed along a path of labels.
pub fn derive_path(parent: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(parent, |s, &l| derive(s, l))
}

pub fn rng_from(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Stateless uniform draw in `[0, 1)` keyed by `(key, round, arm)`.
///
/// Used for common random numbers: the outcome of an arm at a round is the
/// same whichever arm the policy played.
#[inline]
pub fn keyed_uniform(key: u64, round: u64, arm: u64) -> f64 {
    let h = mix64(derive(key, round) ^ mix64(arm.wrapping_add(GOLDEN)));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

// Labels for the top-level streams of an experiment.
pub(crate) const LABEL_GRAPH: u64 = 1;
pub(crate) const LABEL_TRIAL: u64 = 2;
pub(crate) const LABEL_INSTANCE: u64 = 3;
pub(crate) const LABEL_REWARDS: u64 = 4;
pub(crate) const LABEL_POLICY: u64 = 5;
pub(crate) const LABEL_GROUPS: u64 = 6;
