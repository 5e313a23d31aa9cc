use crate::error::{Error, Result};
use crate::graph::TransitionTable;

use super::{cylinder, product_boolean, Alphabet, BoolOp, ParitySet, Word};

/// An open set with reachability acceptance: a point is a member iff its run
/// ever enters the absorbing target region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenSet {
    automaton: ParitySet,
}

impl OpenSet {
    pub fn from_targets(transitions: TransitionTable, start: usize, targets: &[bool]) -> Result<OpenSet> {
        let n = transitions.num_states();
        if targets.len() != n {
            return Err(Error::InvalidAutomaton("target mask length mismatch".into()));
        }
        for q in (0..n).filter(|&q| targets[q]) {
            if let Some(&t) = transitions.successors(q).iter().find(|&&t| !targets[t]) {
                return Err(Error::InvalidAutomaton(format!(
                    "target state {q} leaves the target region via {t}"
                )));
            }
        }
        let priority = targets.iter().map(|&t| u32::from(!t)).collect();
        Ok(OpenSet {
            automaton: ParitySet::new(transitions, start, priority)?.trim(),
        })
    }

    /// Reads a parity automaton as an open set: its even-priority states
    /// must form an absorbing region.
    pub fn new(automaton: ParitySet) -> Result<OpenSet> {
        let targets: Vec<bool> = automaton.priorities().iter().map(|p| p % 2 == 0).collect();
        OpenSet::from_targets(automaton.transitions().clone(), automaton.start(), &targets)
    }

    pub fn empty(alphabet: Alphabet) -> OpenSet {
        OpenSet::new(ParitySet::empty(alphabet)).expect("valid")
    }

    pub fn full(alphabet: Alphabet) -> OpenSet {
        OpenSet::new(ParitySet::full(alphabet)).expect("valid")
    }

    /// `[s]`.
    pub fn cylinder(alphabet: Alphabet, s: &Word) -> Result<OpenSet> {
        OpenSet::new(cylinder(alphabet, s)?.compile())
    }

    /// Points containing `factor` somewhere (prefix-matching automaton).
    pub fn contains_factor(alphabet: Alphabet, factor: &Word) -> Result<OpenSet> {
        let f = factor.symbols();
        if let Some(&symbol) = f.iter().find(|&&a| a >= alphabet.size()) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                size: alphabet.size(),
            });
        }
        let m = f.len();
        // state i < m: longest suffix read that is a prefix of the factor has length i
        let rows = (0..=m)
            .map(|i| {
                (0..alphabet.size())
                    .map(|a| {
                        if i == m {
                            return m;
                        }
                        let mut read: Vec<usize> = f[..i].to_vec();
                        read.push(a);
                        (0..=read.len())
                            .rev()
                            .find(|&l| l <= m && read[read.len() - l..] == f[..l])
                            .unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        let mut targets = vec![false; m + 1];
        targets[m] = true;
        OpenSet::from_targets(TransitionTable::new(alphabet, rows)?, 0, &targets)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.automaton.alphabet()
    }

    pub fn automaton(&self) -> &ParitySet {
        &self.automaton
    }

    pub fn into_automaton(self) -> ParitySet {
        self.automaton
    }

    pub fn is_target(&self, q: usize) -> bool {
        self.automaton.priority(q) == 0
    }

    /// States from which every infinite run enters the target region,
    /// i.e. states `q` with `[sigma] contained in A` for any word reaching `q`.
    pub fn surely_enters(&self) -> Vec<bool> {
        let n = self.automaton.num_states();
        let outside: Vec<bool> = (0..n).map(|q| !self.is_target(q)).collect();
        let escapes = self.automaton.transitions().has_infinite_path(&outside);
        escapes.into_iter().map(|e| !e).collect()
    }
}

/// Every point of `a` lies in `b`.
pub fn open_subset(a: &OpenSet, b: &OpenSet) -> Result<bool> {
    Ok(product_boolean(a.automaton(), b.automaton(), BoolOp::Diff)?.is_empty())
}

impl OpenSet {
    pub fn is_subset_of(&self, other: &OpenSet) -> Result<bool> {
        open_subset(self, other)
    }
}
