//! Counter-style seeded streams: trial `i` under seed `s` always draws from
//! stream `(s, i)`, independent of how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type StreamRng = ChaCha20Rng;

pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
