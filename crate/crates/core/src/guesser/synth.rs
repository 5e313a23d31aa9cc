use crate::error::{Error, Result};
use crate::graph::TransitionTable;
use crate::ordinal::{Ordinal, Rank};
use crate::remainder::{remainder_chain, RemainderTrace};
use crate::space::ParitySet;

use super::{MooreGuesser, RankedGuesser};

fn finite_rank(trace: &RemainderTrace, q: usize) -> Option<usize> {
    match trace.state_rank(q) {
        Rank::At(o) => o.as_finite().map(|r| r as usize),
        Rank::Infinity => None,
    }
}

/// Output of the canonical guesser at a word whose run ends in `q` with
/// word rank `rank`; `inherited` is the output one step earlier (0 at the
/// empty word).
fn canonical_output(trace: &RemainderTrace, q: usize, rank: usize, inherited: bool) -> bool {
    let level = rank - 1;
    match (trace.can_accept_within(level, q), trace.can_reject_within(level, q)) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => inherited,
        (true, true) => unreachable!("state {q} would survive stage {rank}"),
    }
}

/// The canonical guesser with bound `H(sigma) = beta(sigma) - 1`.
///
/// States are triples (automaton state, word rank so far, current output):
/// the word rank is the minimum state rank along the run, and the output
/// bit carries the inherited value when the word has no infinite extension
/// inside the relevant stage.
pub fn synthesize(s: &ParitySet) -> Result<RankedGuesser> {
    let trace = remainder_chain(s);
    if !trace.is_guessable() {
        return Err(Error::NotGuessable);
    }
    let subject = trace.subject();
    let q0 = subject.start();
    let r0 = finite_rank(&trace, q0).expect("guessable start has a finite rank");
    let start = (q0, r0, canonical_output(&trace, q0, r0, false));

    let (table, keys) = TransitionTable::explore(subject.alphabet(), start, |&(q, r, b), a| {
        let next = subject.next(q, a);
        let r = match finite_rank(&trace, next) {
            Some(rn) => r.min(rn),
            None => r,
        };
        (next, r, canonical_output(&trace, next, r, b))
    });
    let output = keys.iter().map(|&(_, _, b)| b).collect();
    let bound = keys.iter().map(|&(_, r, _)| Ordinal::finite(r as u64 - 1)).collect();
    let guesser = MooreGuesser::new(table, 0, output)?;
    RankedGuesser::new(guesser, bound, Ordinal::finite(r0 as u64))
}

/// The least `alpha` with `S_alpha` empty, or `None` when `S` is not guessable.
pub fn mind_change_rank(s: &ParitySet) -> Option<Ordinal> {
    remainder_chain(s).mind_change_rank()
}
