//! Deterministic transition tables and the cycle analyses shared by every
//! automaton-shaped type in the crate.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::space::{Alphabet, UpWord, Word};

/// A complete deterministic transition function `Q x Sigma -> Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionTable {
    alphabet: Alphabet,
    table: Vec<usize>,
}

impl TransitionTable {
    /// `rows[q][a]` is the successor of `q` on symbol `a`.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<usize>>) -> Result<TransitionTable> {
        let k = alphabet.size();
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let mut table = Vec::with_capacity(n * k);
        for (q, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has a transition to unknown state {t}"
                )));
            }
            table.extend(row);
        }
        Ok(TransitionTable { alphabet, table })
    }

    /// Builds a table by exploring `next` breadth-first from `start`,
    /// numbering discovered keys in discovery order (symbols ascending).
    pub fn explore<K, F>(alphabet: Alphabet, start: K, mut next: F) -> (TransitionTable, Vec<K>)
    where
        K: Clone + Eq + std::hash::Hash,
        F: FnMut(&K, usize) -> K,
    {
        let k = alphabet.size();
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut keys = vec![start.clone()];
        index.insert(start, 0);
        let mut table = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            for a in 0..k {
                let succ = next(&keys[i], a);
                let id = match index.get(&succ) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len();
                        index.insert(succ.clone(), id);
                        keys.push(succ);
                        id
                    }
                };
                table.push(id);
            }
            i += 1;
        }
        (TransitionTable { alphabet, table }, keys)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.table.len() / self.alphabet.size()
    }

    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.table[q * self.alphabet.size() + a]
    }

    pub fn successors(&self, q: usize) -> &[usize] {
        let k = self.alphabet.size();
        &self.table[q * k..(q + 1) * k]
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.alphabet.size()) {
            Some(&symbol) => Err(Error::SymbolOutOfRange {
                symbol,
                size: self.alphabet.size(),
            }),
            None => Ok(()),
        }
    }

    /// States along the run of `word` from `from`, including `from`.
    pub fn run(&self, from: usize, word: &[usize]) -> Result<Vec<usize>> {
        self.check_word(word)?;
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut q = from;
        states.push(q);
        for &a in word {
            q = self.next(q, a);
            states.push(q);
        }
        Ok(states)
    }

    pub fn state_after(&self, from: usize, word: &[usize]) -> Result<usize> {
        self.check_word(word)?;
        Ok(word.iter().fold(from, |q, &a| self.next(q, a)))
    }

    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(q) = stack.pop() {
            for &t in self.successors(q) {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Restricts to states reachable from `start`, renumbered breadth-first.
    /// Returns the new table and, for each new state, its old index.
    pub fn trim(&self, start: usize) -> (TransitionTable, Vec<usize>) {
        TransitionTable::explore(self.alphabet, start, |&q, a| self.next(q, a))
    }

    /// States visited infinitely often on `w` when starting from `from`.
    pub fn up_cycle(&self, from: usize, w: &UpWord) -> Result<Vec<usize>> {
        self.check_word(w.prefix().symbols())?;
        self.check_word(w.period().symbols())?;
        let mut q = self.state_after(from, w.prefix().symbols())?;
        let mut boundary: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        loop {
            if let Some(&first) = boundary.get(&q) {
                let mut states: Vec<usize> = blocks[first..].concat();
                states.sort_unstable();
                states.dedup();
                return Ok(states);
            }
            boundary.insert(q, blocks.len());
            let mut entered = Vec::with_capacity(w.period().len());
            for &a in w.period().symbols() {
                q = self.next(q, a);
                entered.push(q);
            }
            blocks.push(entered);
        }
    }

    fn digraph(&self, allowed: &[bool]) -> DiGraph<(), ()> {
        let n = self.num_states();
        let mut g = DiGraph::with_capacity(n, n * self.alphabet.size());
        for _ in 0..n {
            g.add_node(());
        }
        for q in (0..n).filter(|&q| allowed[q]) {
            for &t in self.successors(q) {
                if allowed[t] {
                    g.add_edge(NodeIndex::new(q), NodeIndex::new(t), ());
                }
            }
        }
        g
    }

    /// Strongly connected components inside `allowed` that carry a cycle.
    pub fn cyclic_sccs(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let g = self.digraph(allowed);
        let mut out = Vec::new();
        for comp in tarjan_scc(&g) {
            let mut states: Vec<usize> = comp.iter().map(|n| n.index()).collect();
            if !allowed[states[0]] {
                continue;
            }
            let cyclic = states.len() > 1 || self.successors(states[0]).contains(&states[0]);
            if cyclic {
                states.sort_unstable();
                out.push(states);
            }
        }
        out.sort();
        out
    }

    /// States of `allowed` from which some state in `targets` is reachable
    /// without leaving `allowed`.
    pub fn backward_reach(&self, targets: &[bool], allowed: &[bool]) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in (0..n).filter(|&q| allowed[q]) {
            for &t in self.successors(q) {
                if allowed[t] {
                    preds[t].push(q);
                }
            }
        }
        let mut seen: Vec<bool> = (0..n).map(|q| allowed[q] && targets[q]).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States of `allowed` from which some infinite path stays in `allowed`.
    pub fn has_infinite_path(&self, allowed: &[bool]) -> Vec<bool> {
        let mut on_cycle = vec![false; self.num_states()];
        for scc in self.cyclic_sccs(allowed) {
            for q in scc {
                on_cycle[q] = true;
            }
        }
        self.backward_reach(&on_cycle, allowed)
    }

    /// Shortest, then lexicographically least, nonempty path from `from` to
    /// a state in `targets`, moving only through `allowed` states.
    /// `from` itself counts as a target only after at least one step.
    pub fn shortest_path(&self, from: usize, targets: &[bool], allowed: &[bool]) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some(q) = queue.pop_front() {
            for (a, &t) in self.successors(q).iter().enumerate() {
                if !allowed[t] {
                    continue;
                }
                if targets[t] {
                    let mut symbols = vec![a];
                    let mut cur = q;
                    while cur != from {
                        let (p, b) = parent[cur].expect("discovered state has a parent");
                        symbols.push(b);
                        cur = p;
                    }
                    symbols.reverse();
                    return Some(Word::from(symbols));
                }
                if !seen[t] && t != from {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortest word leading from `from` to `to` (possibly empty).
    pub fn path_to(&self, from: usize, to: usize, allowed: &[bool]) -> Option<Word> {
        if from == to {
            return Some(Word::default());
        }
        let mut targets = vec![false; self.num_states()];
        targets[to] = true;
        self.shortest_path(from, &targets, allowed)
    }

    /// A lasso from `start` whose loop passes through `anchor` and, if given,
    /// through some state of `via`. The loop stays inside `cycle_allowed`.
    pub fn lasso(
        &self,
        start: usize,
        anchor: usize,
        via: Option<&[bool]>,
        prefix_allowed: &[bool],
        cycle_allowed: &[bool],
    ) -> Option<UpWord> {
        let prefix = self.path_to(start, anchor, prefix_allowed)?;
        let mut anchor_only = vec![false; self.num_states()];
        anchor_only[anchor] = true;
        let period = match via {
            Some(via) if !via[anchor] => {
                let to_via = self.shortest_path(anchor, via, cycle_allowed)?;
                let mid = self.state_after(anchor, to_via.symbols()).ok()?;
                let back = self.path_to(mid, anchor, cycle_allowed)?;
                to_via.concat(&back)
            }
            _ => self.shortest_path(anchor, &anchor_only, cycle_allowed)?,
        };
        UpWord::new(prefix, period).ok()
    }
}

/// Picks the reproducible best among candidate witnesses: shortest total
/// length first, then lexicographically least prefix and period.
pub fn best_witness(candidates: impl IntoIterator<Item = UpWord>) -> Option<UpWord> {
    candidates.into_iter().min_by(|a, b| {
        let la = a.prefix().len() + a.period().len();
        let lb = b.prefix().len() + b.period().len();
        la.cmp(&lb)
            .then_with(|| a.prefix().cmp(b.prefix()))
            .then_with(|| a.period().cmp(b.period()))
    })
}

/// Number of candidate points scanned by [`shortest_witness`] before it
/// settles for the structural witness.
const REFINE_BUDGET: usize = 1 << 14;

/// Improves a structural witness to the least point (in witness order)
/// satisfying `holds`, by scanning canonical points no longer than `found`.
/// Falls back to `found` when the scan would exceed the budget.
pub fn shortest_witness(alphabet: Alphabet, found: Option<UpWord>, holds: impl Fn(&UpWord) -> bool) -> Option<UpWord> {
    let found = found?;
    let total = found.prefix().len() + found.period().len();
    let k = alphabet.size();
    let size = (1..=total).try_fold(0usize, |acc, l| {
        k.checked_pow(l as u32).and_then(|p| p.checked_mul(l)).and_then(|p| acc.checked_add(p))
    });
    if size.is_none_or(|s| s > REFINE_BUDGET) {
        return Some(found);
    }
    for len in 1..=total {
        for w in UpWord::all_of_length(alphabet, len) {
            if len == total && w >= found {
                return Some(found);
            }
            if holds(&w) {
                return Some(w);
            }
        }
    }
    Some(found)
}

/// Anchors of cycles inside `allowed` whose maximum value of `priority` is
/// exactly `level`.
pub fn cycle_anchors_at(
    table: &TransitionTable,
    priority: &[u32],
    allowed: &[bool],
    level: u32,
) -> Vec<usize> {
    let below: Vec<bool> = (0..table.num_states())
        .map(|q| allowed[q] && priority[q] <= level)
        .collect();
    let mut anchors = Vec::new();
    for scc in table.cyclic_sccs(&below) {
        anchors.extend(scc.iter().copied().filter(|&q| priority[q] == level));
    }
    anchors.sort_unstable();
    anchors
}

/// States of `allowed` that can reach, within `allowed`, a cycle whose
/// maximum priority has the requested parity (`odd == false` for even).
pub fn reaches_cycle_of_parity(
    table: &TransitionTable,
    priority: &[u32],
    allowed: &[bool],
    odd: bool,
) -> Vec<bool> {
    let n = table.num_states();
    let mut levels: Vec<u32> = (0..n)
        .filter(|&q| allowed[q] && (priority[q] % 2 == 1) == odd)
        .map(|q| priority[q])
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let mut seeds = vec![false; n];
    for level in levels {
        let below: Vec<bool> = (0..n).map(|q| allowed[q] && priority[q] <= level).collect();
        for scc in table.cyclic_sccs(&below) {
            if scc.iter().any(|&q| priority[q] == level) {
                for q in scc {
                    seeds[q] = true;
                }
            }
        }
    }
    table.backward_reach(&seeds, allowed)
}
