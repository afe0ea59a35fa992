//! Seeded, splittable random streams.
//!
//! Every parallel Monte Carlo job is cut into fixed-size blocks; block `i`
//! draws from stream `i` of the same seed, so results do not depend on how
//! the blocks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Samples per parallel block.
pub const BLOCK: u64 = 1 << 14;

pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Splits `total` draws into `(block index, block size)` pairs.
pub fn blocks(total: u64) -> Vec<(u64, u64)> {
    (0..total.div_ceil(BLOCK))
        .map(|i| (i, BLOCK.min(total - i * BLOCK)))
        .collect()
}
