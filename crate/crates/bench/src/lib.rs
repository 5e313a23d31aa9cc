//! Benchmark inputs shared by the criterion suites.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mindchange::corpus::{random_chain, random_parity_set};
use mindchange::{Alphabet, OpenChain, ParitySet};

/// `count` random automata of at most `max_states` states, fixed seed.
pub fn sets(count: usize, max_states: usize) -> Vec<ParitySet> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| random_parity_set(&mut rng, Alphabet::binary(), max_states, 4))
        .collect()
}

/// Sets from [`sets`] that are guessable.
pub fn guessable_sets(count: usize, max_states: usize) -> Vec<ParitySet> {
    sets(count * 4, max_states)
        .into_iter()
        .filter(|s| mindchange::remainder_chain(s).is_guessable())
        .take(count)
        .collect()
}

pub fn chains(count: usize, max_theta: usize, max_states: usize) -> Vec<OpenChain> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..count)
        .map(|_| random_chain(&mut rng, Alphabet::binary(), max_theta, max_states))
        .collect()
}
