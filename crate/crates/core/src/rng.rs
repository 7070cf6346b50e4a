//! Reproducible random streams.
//!
//! Every stochastic component draws from a [`SimRng`]. Replica streams are
//! derived as `ChaCha8(seed = master_seed, stream = replica_index)`: ChaCha's
//! 64-bit stream id selects a disjoint keystream for the same key, so each
//! replica gets its own sequence no matter how replicas are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream reserved for choices shared by all replicas (e.g. seed selection).
pub const SHARED_STREAM: u64 = u64::MAX;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn derive_replica_rng(master_seed: u64, replica_index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replica_index);
    rng
}
