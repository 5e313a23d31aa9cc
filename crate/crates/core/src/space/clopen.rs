use crate::error::{Error, Result};
use crate::graph::TransitionTable;

use super::{Alphabet, ParitySet, UpWord, Word};

/// A clopen set given by a total table on `Sigma^depth`: membership of a
/// point depends only on its first `depth` symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClopenTable {
    alphabet: Alphabet,
    depth: usize,
    table: Vec<bool>,
}

/// The basic open set `[s]`.
pub fn cylinder(alphabet: Alphabet, s: &Word) -> Result<ClopenTable> {
    if let Some(&symbol) = s.symbols().iter().find(|&&a| a >= alphabet.size()) {
        return Err(Error::SymbolOutOfRange {
            symbol,
            size: alphabet.size(),
        });
    }
    let mut t = ClopenTable::constant(alphabet, s.len(), false);
    let i = t.index(s.symbols());
    t.table[i] = true;
    Ok(t)
}

impl ClopenTable {
    pub fn new(alphabet: Alphabet, depth: usize, table: Vec<bool>) -> Result<ClopenTable> {
        let expected = alphabet
            .size()
            .checked_pow(depth as u32)
            .ok_or_else(|| Error::BudgetExceeded(format!("depth {depth} table")))?;
        if table.len() != expected {
            return Err(Error::InvalidAutomaton(format!(
                "clopen table of depth {depth} needs {expected} entries, got {}",
                table.len()
            )));
        }
        Ok(ClopenTable {
            alphabet,
            depth,
            table,
        })
    }

    pub fn constant(alphabet: Alphabet, depth: usize, value: bool) -> ClopenTable {
        let len = alphabet.size().pow(depth as u32);
        ClopenTable {
            alphabet,
            depth,
            table: vec![value; len],
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> &[bool] {
        &self.table
    }

    fn index(&self, prefix: &[usize]) -> usize {
        prefix[..self.depth]
            .iter()
            .fold(0, |acc, &a| acc * self.alphabet.size() + a)
    }

    /// Membership of every point extending `word`; `word` must have length
    /// at least `depth`.
    pub fn lookup(&self, word: &[usize]) -> bool {
        self.table[self.index(word)]
    }

    pub fn membership_up(&self, w: &UpWord) -> bool {
        self.lookup(w.take(self.depth).symbols())
    }

    /// Prefix tree of depth `depth` plus an accepting and a rejecting sink.
    pub fn compile(&self) -> ParitySet {
        let k = self.alphabet.size();
        // Node ids: prefix-tree nodes in breadth-first order, then the two sinks.
        let internal: usize = (0..self.depth).map(|l| k.pow(l as u32)).sum();
        let accept = internal;
        let reject = internal + 1;
        let mut rows = Vec::with_capacity(internal + 2);
        let mut level_start = 0;
        for level in 0..self.depth {
            let width = k.pow(level as u32);
            let next_start = level_start + width;
            for offset in 0..width {
                let row = (0..k)
                    .map(|a| {
                        let child = offset * k + a;
                        if level + 1 == self.depth {
                            if self.table[child] {
                                accept
                            } else {
                                reject
                            }
                        } else {
                            next_start + child
                        }
                    })
                    .collect();
                rows.push(row);
            }
            level_start = next_start;
        }
        rows.push(vec![accept; k]);
        rows.push(vec![reject; k]);
        let mut priority = vec![1; internal];
        priority.push(0);
        priority.push(1);
        let start = if self.depth == 0 {
            if self.table[0] {
                accept
            } else {
                reject
            }
        } else {
            0
        };
        let table = TransitionTable::new(self.alphabet, rows).expect("well-formed tree");
        ParitySet::new(table, start, priority).expect("well-formed tree").trim()
    }
}
