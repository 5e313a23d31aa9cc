//! Brute-force reference for clopen sets given by explicit tables.
//!
//! Works on the finite tree `Sigma^{<=D}` with `D` at least the table depth
//! and applies the word-level definitions literally: `S_0` is every word,
//! and `sigma` stays in `S_{b+1}` iff it is in `S_b` and some infinite
//! sequences through `sigma` with all prefixes in `S_b` fall on both sides
//! of the set. Below depth `d` every subtree is membership-constant, so a
//! node at the horizon stands for its entire subtree: all of its
//! extensions share its stage membership and its class. Nothing here uses
//! automata; the automaton pipeline is checked against it.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::guesser::synthesize;
use crate::ordinal::Rank;
use crate::remainder::remainder_chain;
use crate::space::{Alphabet, ClopenTable, Word};

const TABLE_BUDGET: usize = 16;

fn table_count(k: usize, d: usize) -> Result<(usize, usize)> {
    let alphabet = Alphabet::new(k)?;
    let cells = alphabet
        .size()
        .checked_pow(d as u32)
        .filter(|&c| c <= TABLE_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("{k}^{d} table cells exceed {TABLE_BUDGET}")))?;
    Ok((cells, 1usize << cells))
}

fn table_from_bits(alphabet: Alphabet, d: usize, cells: usize, bits: usize) -> ClopenTable {
    let entries = (0..cells).map(|i| bits >> i & 1 == 1).collect();
    ClopenTable::new(alphabet, d, entries).expect("sized by construction")
}

/// Every depth-`d` table over `k` symbols, once each.
pub fn exhaustive_tables(k: usize, d: usize) -> Result<Vec<ClopenTable>> {
    let (cells, total) = table_count(k, d)?;
    let alphabet = Alphabet::new(k)?;
    Ok((0..total).map(|bits| table_from_bits(alphabet, d, cells, bits)).collect())
}

/// `count` distinct tables drawn uniformly without replacement.
pub fn sampled_tables(k: usize, d: usize, count: usize, seed: u64) -> Result<Vec<ClopenTable>> {
    let (cells, total) = table_count(k, d)?;
    let alphabet = Alphabet::new(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, total, count.min(total)).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|bits| table_from_bits(alphabet, d, cells, bits)).collect())
}

/// The stage analysis of one table on `Sigma^{<=horizon}`.
#[derive(Debug, Clone)]
pub struct TruncatedTree {
    table: ClopenTable,
    horizon: usize,
    /// Nodes level by level; a node at level `l` with offset `o` has
    /// children `o * k + a` at level `l + 1`.
    level_start: Vec<usize>,
    /// `rank[x]`: least stage not containing `x`.
    rank: Vec<Option<usize>>,
    /// `ext[b][x]`: classes (bit 0: outside, bit 1: inside) of infinite
    /// extensions of `x` inside `[S_b]`.
    ext: Vec<Vec<u8>>,
    least_empty: Option<usize>,
}

const OUTSIDE: u8 = 1;
const INSIDE: u8 = 2;

impl TruncatedTree {
    /// Analyses `table` on words of length up to `horizon`, which is raised
    /// to the table depth if smaller.
    pub fn build(table: &ClopenTable, horizon: usize) -> TruncatedTree {
        let k = table.alphabet().size();
        let d = table.depth();
        let horizon = horizon.max(d);
        let mut level_start = vec![0];
        for l in 0..=horizon {
            level_start.push(level_start[l] + k.pow(l as u32));
        }
        let n = level_start[horizon + 1];

        let class: Vec<u8> = (0..k.pow(horizon as u32))
            .map(|o| {
                let word = digits(o, k, horizon);
                if table.lookup(&word) {
                    INSIDE
                } else {
                    OUTSIDE
                }
            })
            .collect();

        let mut inside = vec![true; n];
        let mut rank = vec![None; n];
        let mut ext = Vec::new();
        let mut stage = 0;
        let least_empty = loop {
            if !inside[0] {
                break Some(stage);
            }
            let mut e = vec![0u8; n];
            let base = level_start[horizon];
            for (o, &c) in class.iter().enumerate() {
                if inside[base + o] {
                    e[base + o] = c;
                }
            }
            for l in (0..horizon).rev() {
                for o in 0..k.pow(l as u32) {
                    let x = level_start[l] + o;
                    if inside[x] {
                        e[x] = (0..k).fold(0, |acc, a| acc | e[level_start[l + 1] + o * k + a]);
                    }
                }
            }
            let next: Vec<bool> = (0..n).map(|x| inside[x] && e[x] == OUTSIDE | INSIDE).collect();
            for x in 0..n {
                if inside[x] && !next[x] {
                    rank[x] = Some(stage + 1);
                }
            }
            ext.push(e);
            if next == inside {
                break None;
            }
            inside = next;
            stage += 1;
        };

        TruncatedTree {
            table: table.clone(),
            horizon,
            level_start,
            rank,
            ext,
            least_empty,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    fn node(&self, sigma: &Word) -> usize {
        let k = self.table.alphabet().size();
        assert!(sigma.len() <= self.horizon, "word beyond the horizon");
        self.level_start[sigma.len()] + sigma.symbols().iter().fold(0, |acc, &a| acc * k + a)
    }

    /// `beta(sigma)`; `None` if `sigma` never leaves the chain.
    pub fn rank(&self, sigma: &Word) -> Option<usize> {
        self.rank[self.node(sigma)]
    }

    /// Least `b` with `S_b` empty.
    pub fn least_empty_stage(&self) -> Option<usize> {
        self.least_empty
    }

    /// The set's guesser from the four-case definition, on every word of
    /// length at most the horizon. `None` if some word never leaves the chain.
    pub fn guesser(&self) -> Option<BTreeMap<Word, bool>> {
        let k = self.table.alphabet().size();
        let mut out = BTreeMap::new();
        let mut values = vec![false; self.rank.len()];
        for l in 0..=self.horizon {
            for o in 0..k.pow(l as u32) {
                let x = self.level_start[l] + o;
                let r = self.rank[x]?;
                let inherited = if l == 0 { false } else { values[self.level_start[l - 1] + o / k] };
                values[x] = match self.ext[r - 1][x] {
                    0 => inherited,
                    INSIDE => true,
                    OUTSIDE => false,
                    _ => unreachable!("a node with both classes survives its stage"),
                };
                out.insert(Word::from(digits(o, k, l)), values[x]);
            }
        }
        Some(out)
    }
}

fn digits(mut o: usize, k: usize, len: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = o % k;
        o /= k;
    }
    v
}

/// `beta` on every word of length at most `depth + 1`.
pub fn truncated_remainder(t: &ClopenTable) -> BTreeMap<Word, Option<usize>> {
    let tree = TruncatedTree::build(t, t.depth() + 1);
    t.alphabet()
        .words_up_to(tree.horizon())
        .map(|w| {
            let r = tree.rank(&w);
            (w, r)
        })
        .collect()
}

/// The four-case guesser on every word of length at most `depth + 1`.
pub fn truncated_guesser(t: &ClopenTable) -> BTreeMap<Word, bool> {
    TruncatedTree::build(t, t.depth() + 1)
        .guesser()
        .expect("clopen sets leave the chain")
}

/// Outcome of comparing the oracle with the automaton pipeline.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossReport {
    pub tables: usize,
    pub rank_checks: usize,
    pub rank_mismatches: usize,
    pub guess_checks: usize,
    pub guess_mismatches: usize,
    pub first_failure: Option<String>,
}

impl CrossReport {
    pub fn ranks_agree(&self) -> bool {
        self.rank_mismatches == 0
    }

    pub fn guesses_agree(&self) -> bool {
        self.guess_mismatches == 0
    }

    pub fn merge(&mut self, other: CrossReport) {
        self.tables += other.tables;
        self.rank_checks += other.rank_checks;
        self.rank_mismatches += other.rank_mismatches;
        self.guess_checks += other.guess_checks;
        self.guess_mismatches += other.guess_mismatches;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

fn entries_string(t: &ClopenTable) -> String {
    t.entries().iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Compares word ranks (against the remainder chain of the compiled table)
/// and guesser outputs (against the synthesized guesser) on every word of
/// length at most `max_len`.
pub fn cross_validate(tables: &[ClopenTable], max_len: usize) -> Result<CrossReport> {
    let mut report = CrossReport::default();
    for t in tables {
        let tree = TruncatedTree::build(t, max_len.max(t.depth() + 1));
        let automaton = t.compile();
        let trace = remainder_chain(&automaton);
        let synthesized = synthesize(&automaton)?;
        let oracle_guess = tree.guesser().ok_or(Error::NotGuessable)?;
        report.tables += 1;
        for sigma in t.alphabet().words_up_to(max_len) {
            let expected = match tree.rank(&sigma) {
                Some(r) => Rank::finite(r as u64),
                None => Rank::Infinity,
            };
            report.rank_checks += 1;
            let got = trace.word_rank(&sigma)?;
            if got != expected {
                report.rank_mismatches += 1;
                report.first_failure.get_or_insert_with(|| {
                    format!("table {} word {sigma}: rank {got} vs oracle {expected}", entries_string(t))
                });
            }
            report.guess_checks += 1;
            let got = synthesized.guesser().evaluate(&sigma)?;
            if got != oracle_guess[&sigma] {
                report.guess_mismatches += 1;
                report.first_failure.get_or_insert_with(|| {
                    format!("table {} word {sigma}: guess {got} vs oracle {}", entries_string(t), !got)
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guesser::mind_change_rank;
    use crate::ordinal::Ordinal;
    use crate::space::cylinder;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cyl1() -> ClopenTable {
        cylinder(Alphabet::binary(), &w("1")).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(exhaustive_tables(2, 1).unwrap().len(), 4);
        assert_eq!(exhaustive_tables(2, 2).unwrap().len(), 16);
        assert_eq!(exhaustive_tables(2, 3).unwrap().len(), 256);
        assert!(matches!(exhaustive_tables(2, 5), Err(Error::BudgetExceeded(_))));
        assert!(matches!(exhaustive_tables(3, 3), Err(Error::BudgetExceeded(_))));
        let sampled = sampled_tables(3, 2, 200, 0).unwrap();
        assert_eq!(sampled.len(), 200);
        let mut distinct: Vec<_> = sampled.iter().map(|t| t.entries().to_vec()).collect();
        distinct.dedup();
        assert_eq!(distinct.len(), 200);
        assert_eq!(sampled_tables(3, 2, 200, 0).unwrap(), sampled);
    }

    #[test]
    fn remainder_of_cylinder() {
        let r = truncated_remainder(&cyl1());
        assert_eq!(r[&Word::default()], Some(2));
        assert_eq!(r[&w("0")], Some(1));
        assert_eq!(r[&w("1")], Some(1));
        assert_eq!(TruncatedTree::build(&cyl1(), 2).least_empty_stage(), Some(2));
    }

    #[test]
    fn remainder_of_full() {
        let full = ClopenTable::constant(Alphabet::binary(), 2, true);
        assert!(truncated_remainder(&full).values().all(|&r| r == Some(1)));
        assert_eq!(TruncatedTree::build(&full, 3).least_empty_stage(), Some(1));
    }

    #[test]
    fn remainder_of_xor_table() {
        let t = ClopenTable::new(Alphabet::binary(), 2, vec![false, true, true, false]).unwrap();
        assert_eq!(truncated_remainder(&t)[&Word::default()], Some(2));
    }

    #[test]
    fn guesser_examples() {
        let g = truncated_guesser(&cyl1());
        assert!(!g[&Word::default()]);
        assert!(g[&w("1")]);
        assert!(!g[&w("0")]);
        assert!(truncated_guesser(&ClopenTable::constant(Alphabet::binary(), 1, true))
            .values()
            .all(|&b| b));
        assert!(truncated_guesser(&ClopenTable::constant(Alphabet::binary(), 1, false))
            .values()
            .all(|&b| !b));
    }

    #[test]
    fn binary_depth_three_agrees() {
        let report = cross_validate(&exhaustive_tables(2, 3).unwrap(), 4).unwrap();
        assert_eq!(report.tables, 256);
        assert!(report.ranks_agree() && report.guesses_agree(), "{:?}", report.first_failure);
    }

    #[test]
    fn fixture_ranks_reproduced() {
        let binary = Alphabet::binary();
        let cases = [
            (ClopenTable::constant(binary, 0, false), 1),
            (ClopenTable::constant(binary, 0, true), 1),
            (cyl1(), 2),
        ];
        for (t, expected) in cases {
            let tree = TruncatedTree::build(&t, t.depth() + 1);
            assert_eq!(tree.rank(&Word::default()), Some(expected));
            assert_eq!(mind_change_rank(&t.compile()), Some(Ordinal::finite(expected as u64)));
        }
    }
}
