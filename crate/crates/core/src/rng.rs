//! Seed derivation for reproducible, order-independent parallel work.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for work item `index` under `master_seed`.
///
/// Each index gets its own ChaCha stream, so results do not depend on how
/// items are scheduled across threads.
pub fn derive_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}
