//! Guessable sets of infinite words over a finite alphabet.
//!
//! Sets are deterministic parity automata. The crate computes the
//! remainder chain `S_0 ⊇ S_1 ⊇ ...` of a set, its mind-change rank, a
//! canonical guesser with a bound on its mind changes, and conversions
//! between bounded guessers and increasing chains of open sets. An
//! independent brute-force oracle over clopen tables backs the tests.

pub mod based;
pub mod corpus;
pub mod diff_hierarchy;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod guesser;
pub mod oracle;
pub mod ordinal;
pub mod remainder;
pub mod space;

pub use based::{cylinder_simulator, family_stream, last_bit_guesser, limsup_liminf_check, verify_based, OracleFamily};
pub use diff_hierarchy::{
    chain_to_guesser, classify, d_theta, guesser_to_chain, make_anticongruent, normalize_h, Classification, OpenChain,
    Side,
};
pub use error::{Error, Result};
pub use guesser::{divergence_witness, mind_change_rank, synthesize, Limit, MooreGuesser, RankedGuesser};
pub use ordinal::{Ordinal, Parity, Rank};
pub use remainder::{is_guessable, remainder_chain, RemainderTrace};
pub use space::{equivalent, open_subset, product_boolean, Alphabet, BoolOp, ClopenTable, OpenSet, ParitySet, UpWord, Word};
