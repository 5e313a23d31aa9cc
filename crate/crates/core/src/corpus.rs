//! Deterministic test points and seeded random instances.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::diff_hierarchy::OpenChain;
use crate::graph::TransitionTable;
use crate::guesser::{MooreGuesser, RankedGuesser};
use crate::ordinal::Ordinal;
use crate::space::{open_subset, Alphabet, OpenSet, ParitySet, UpWord, Word};

/// The first `n` ultimately periodic points in canonical order: shortest
/// `|u| + |v|` first, then by prefix, then by period.
pub fn canonical_up_words(alphabet: Alphabet, n: usize) -> Vec<UpWord> {
    let mut out = Vec::with_capacity(n);
    let mut total = 1;
    while out.len() < n {
        let layer = UpWord::all_of_length(alphabet, total);
        out.extend(layer.into_iter().take(n - out.len()));
        total += 1;
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    Word::from((0..len).map(|_| rng.random_range(0..alphabet.size())).collect::<Vec<_>>())
}

pub fn random_up_word<R: Rng>(rng: &mut R, alphabet: Alphabet, max_len: usize) -> UpWord {
    let plen = rng.random_range(0..max_len);
    let vlen = rng.random_range(1..=max_len);
    UpWord::new(random_word(rng, alphabet, plen), random_word(rng, alphabet, vlen)).expect("nonempty period")
}

/// Each edge goes to a state of index at least its source with
/// probability `forward`, anywhere otherwise; forward edges produce the
/// layered component structure that higher ranks need.
fn random_table<R: Rng>(rng: &mut R, alphabet: Alphabet, n: usize, forward: f64) -> TransitionTable {
    let rows = (0..n)
        .map(|q| {
            (0..alphabet.size())
                .map(|_| {
                    if rng.random_bool(forward) {
                        rng.random_range(q..n)
                    } else {
                        rng.random_range(0..n)
                    }
                })
                .collect()
        })
        .collect();
    TransitionTable::new(alphabet, rows).expect("in range")
}

/// A complete automaton with `1..=max_states` states and priorities below
/// `max_priorities`, started at state 0 (not trimmed).
pub fn random_parity_set<R: Rng>(rng: &mut R, alphabet: Alphabet, max_states: usize, max_priorities: u32) -> ParitySet {
    let n = rng.random_range(1..=max_states);
    let table = random_table(rng, alphabet, n, 0.6);
    let priority = (0..n).map(|_| rng.random_range(0..max_priorities)).collect();
    ParitySet::new(table, 0, priority).expect("in range")
}

/// An equivalent automaton with one state split in two: the copy has the
/// same priority and successors, and each edge into the original is sent
/// to the copy with probability one half.
pub fn duplicate_state<R: Rng>(rng: &mut R, s: &ParitySet) -> ParitySet {
    let n = s.num_states();
    let k = s.alphabet().size();
    let q = rng.random_range(0..n);
    let mut rows: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (0..k)
                .map(|a| {
                    let t = s.next(p, a);
                    if t == q && rng.random_bool(0.5) {
                        n
                    } else {
                        t
                    }
                })
                .collect()
        })
        .collect();
    rows.push(rows[q].clone());
    let mut priority = s.priorities().to_vec();
    priority.push(s.priority(q));
    let start = if rng.random_bool(0.5) && s.start() == q { n } else { s.start() };
    ParitySet::from_rows(s.alphabet(), start, rows, priority).expect("in range")
}

pub fn random_moore_guesser<R: Rng>(rng: &mut R, alphabet: Alphabet, max_states: usize) -> MooreGuesser {
    let n = rng.random_range(1..=max_states);
    let table = random_table(rng, alphabet, n, 0.0);
    let output = (0..n).map(|_| rng.random_bool(0.5)).collect();
    MooreGuesser::new(table, 0, output).expect("in range")
}

/// An open set on at most `max_states` states: a random graph whose
/// target states are made absorbing by looping on every symbol. The start
/// is a target only in the one-state case.
pub fn random_open_set<R: Rng>(rng: &mut R, alphabet: Alphabet, max_states: usize) -> OpenSet {
    let n = rng.random_range(1..=max_states);
    let targets: Vec<bool> = (0..n).map(|q| (q > 0 || n == 1) && rng.random_bool(0.4)).collect();
    let rows = (0..n)
        .map(|q| {
            (0..alphabet.size())
                .map(|_| if targets[q] { q } else { rng.random_range(0..n) })
                .collect()
        })
        .collect();
    let table = TransitionTable::new(alphabet, rows).expect("in range");
    OpenSet::from_targets(table, 0, &targets).expect("targets absorbing")
}

/// An increasing chain of `1..=max_theta` open sets, each on at most
/// `max_states` states.
///
/// Half the time the members share one graph: every state gets a level in
/// `0..=theta`, `A_i` targets the states of level at most `i`, and edges
/// out of a state of level below `theta` never raise the level, so each
/// target region is absorbing. Otherwise each member is drawn from random
/// open sets containing the previous one, with the full space as fallback.
pub fn random_chain<R: Rng>(rng: &mut R, alphabet: Alphabet, max_theta: usize, max_states: usize) -> OpenChain {
    let theta = rng.random_range(1..=max_theta);
    let sets = if rng.random_bool(0.5) {
        let n = rng.random_range(1..=max_states);
        let level: Vec<usize> = (0..n)
            .map(|q| if q == 0 && n > 1 { theta } else { rng.random_range(0..=theta) })
            .collect();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|q| {
                let allowed: Vec<usize> = (0..n).filter(|&t| level[q] == theta || level[t] <= level[q]).collect();
                (0..alphabet.size())
                    .map(|_| *allowed.choose(rng).expect("q itself is allowed"))
                    .collect()
            })
            .collect();
        let table = TransitionTable::new(alphabet, rows).expect("in range");
        (0..theta)
            .map(|i| {
                let targets: Vec<bool> = level.iter().map(|&l| l <= i).collect();
                OpenSet::from_targets(table.clone(), 0, &targets).expect("levels never rise")
            })
            .collect()
    } else {
        let mut sets = vec![random_open_set(rng, alphabet, max_states)];
        while sets.len() < theta {
            let last = sets.last().expect("nonempty");
            let next = (0..64)
                .map(|_| random_open_set(rng, alphabet, max_states))
                .find(|c| open_subset(last, c).expect("same alphabet"))
                .unwrap_or_else(|| OpenSet::full(alphabet));
            sets.push(next);
        }
        sets
    };
    OpenChain::new(sets).expect("increasing by construction")
}

/// A random local change to a ranked guesser. The result need not be a
/// valid bound or a correct guesser; callers filter.
pub fn perturb_ranked<R: Rng>(rng: &mut R, rg: &RankedGuesser) -> RankedGuesser {
    let g = rg.guesser();
    let n = g.num_states();
    let k = g.alphabet().size();
    let mut rows: Vec<Vec<usize>> = (0..n).map(|p| g.transitions().successors(p).to_vec()).collect();
    let mut output = g.outputs().to_vec();
    let mut bound = rg.bounds().to_vec();
    let mut codomain = rg.codomain().clone();
    let shift = |o: &Ordinal, by: u64| o.add(&Ordinal::finite(by)).expect("small");
    match *[0, 1, 2, 3, 4].choose(rng).expect("nonempty") {
        0 => {
            let by = rng.random_range(1..=2);
            bound = bound.iter().map(|h| shift(h, by)).collect();
            codomain = shift(&codomain, by);
        }
        1 => {
            let p = rng.random_range(0..n);
            bound[p] = shift(&bound[p], 1);
            codomain = shift(&codomain, rng.random_range(0..=1));
        }
        2 => {
            let p = rng.random_range(0..n);
            rows[p][rng.random_range(0..k)] = rng.random_range(0..n);
        }
        3 => {
            let p = rng.random_range(0..n);
            output[p] = !output[p];
        }
        _ => {
            // split a state; half its incoming edges move to the copy
            let q = rng.random_range(0..n);
            for row in rows.iter_mut() {
                for t in row.iter_mut() {
                    if *t == q && rng.random_bool(0.5) {
                        *t = n;
                    }
                }
            }
            rows.push(rows[q].clone());
            output.push(output[q]);
            bound.push(bound[q].clone());
        }
    }
    let guesser = MooreGuesser::from_rows(g.alphabet(), g.start(), rows, output).expect("in range");
    RankedGuesser::new(guesser, bound, codomain).expect("one bound per state")
}
