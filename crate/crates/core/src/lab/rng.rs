//! Seeded randomness. Every experiment derives one independent ChaCha stream
//! per trial index from a single master seed, so results do not depend on
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type LabRng = ChaCha8Rng;

/// The stream for trial `index` under master `seed`.
pub fn stream(seed: u64, index: u64) -> LabRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
