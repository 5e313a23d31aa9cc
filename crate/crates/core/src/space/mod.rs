//! Finite representations of subsets of `Sigma^omega` over a finite alphabet.
//!
//! The infinite-branching sequence space of the theory is replaced by
//! `Sigma^omega` with `|Sigma| = k >= 2`. Sets are deterministic parity
//! automata ([`ParitySet`]) with a single global acceptance convention: a
//! point is a member iff the maximum priority visited infinitely often is
//! even. Exact membership is evaluated only on ultimately periodic words
//! ([`UpWord`]).

mod automaton;
mod clopen;
mod open;
mod product;
mod word;

pub use automaton::ParitySet;
pub use clopen::{cylinder, ClopenTable};
pub use open::{open_subset, OpenSet};
pub use product::{equivalent, product_boolean, BoolOp};
pub use word::{Alphabet, UpWord, Word};
