//! Seeded random streams shared by the stochastic solvers.
//!
//! All solvers draw from [`SolverRng`] (ChaCha with 8 rounds), seeded from a
//! `u64`. Child streams for independent workers are split off by drawing a
//! fresh `u64` seed from the parent, so a run stays a pure function of its
//! seed no matter how the children are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SolverRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SolverRng {
    SolverRng::seed_from_u64(seed)
}

/// Splits `count` independent child streams off `parent`, in index order.
pub fn split(parent: &mut SolverRng, count: usize) -> Vec<SolverRng> {
    (0..count).map(|_| seeded(parent.gen::<u64>())).collect()
}

/// Two distinct indices in `0..len`, uniformly over ordered pairs.
///
/// Draw order: first index, then the offset for the second.
pub(crate) fn distinct_pair(rng: &mut SolverRng, len: usize) -> (usize, usize) {
    debug_assert!(len >= 2);
    let i = rng.gen_range(0..len);
    let mut j = rng.gen_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}
