//! The single seeded generator type used for every random choice.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SolverRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `seed`; used when work items
/// (attempts, trials) may run in any order but must stay reproducible.
pub fn stream(seed: u64, index: u64) -> SolverRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
