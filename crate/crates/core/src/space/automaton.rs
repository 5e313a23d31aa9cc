use crate::error::{Error, Result};
use crate::graph::{self, TransitionTable};

use super::{Alphabet, UpWord};

/// A deterministic complete parity automaton with max-even acceptance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParitySet {
    transitions: TransitionTable,
    start: usize,
    priority: Vec<u32>,
}

impl ParitySet {
    pub fn new(transitions: TransitionTable, start: usize, priority: Vec<u32>) -> Result<ParitySet> {
        let n = transitions.num_states();
        if start >= n {
            return Err(Error::InvalidAutomaton(format!("start state {start} out of range")));
        }
        if priority.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "{} priorities for {n} states",
                priority.len()
            )));
        }
        Ok(ParitySet {
            transitions,
            start,
            priority,
        })
    }

    pub fn from_rows(
        alphabet: Alphabet,
        start: usize,
        rows: Vec<Vec<usize>>,
        priority: Vec<u32>,
    ) -> Result<ParitySet> {
        ParitySet::new(TransitionTable::new(alphabet, rows)?, start, priority)
    }

    /// `Sigma^omega`.
    pub fn full(alphabet: Alphabet) -> ParitySet {
        ParitySet::constant(alphabet, true)
    }

    /// The empty set.
    pub fn empty(alphabet: Alphabet) -> ParitySet {
        ParitySet::constant(alphabet, false)
    }

    fn constant(alphabet: Alphabet, member: bool) -> ParitySet {
        let rows = vec![vec![0; alphabet.size()]];
        ParitySet::from_rows(alphabet, 0, rows, vec![u32::from(!member)]).expect("valid")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.transitions.alphabet()
    }

    pub fn transitions(&self) -> &TransitionTable {
        &self.transitions
    }

    pub fn num_states(&self) -> usize {
        self.transitions.num_states()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn priority(&self, q: usize) -> u32 {
        self.priority[q]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priority
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.transitions.next(q, a)
    }

    /// Restricts to reachable states, renumbered breadth-first from the start.
    pub fn trim(&self) -> ParitySet {
        let (transitions, old) = self.transitions.trim(self.start);
        let priority = old.iter().map(|&q| self.priority[q]).collect();
        ParitySet {
            transitions,
            start: 0,
            priority,
        }
    }

    pub fn is_trim(&self) -> bool {
        self.transitions.reachable_from(self.start).iter().all(|&r| r)
    }

    /// Same structure with every priority raised by one.
    pub fn complement(&self) -> ParitySet {
        ParitySet {
            transitions: self.transitions.clone(),
            start: self.start,
            priority: self.priority.iter().map(|p| p + 1).collect(),
        }
    }

    /// Exact membership of an ultimately periodic point.
    pub fn membership_up(&self, w: &UpWord) -> Result<bool> {
        let cycle = self.transitions.up_cycle(self.start, w)?;
        let max = cycle.iter().map(|&q| self.priority[q]).max().expect("nonempty cycle");
        Ok(max % 2 == 0)
    }

    fn all_states(&self) -> Vec<bool> {
        vec![true; self.num_states()]
    }

    /// Some reachable cycle has even maximum priority.
    pub fn is_empty(&self) -> bool {
        let reach = self.transitions.reachable_from(self.start);
        !graph::reaches_cycle_of_parity(&self.transitions, &self.priority, &reach, false)[self.start]
    }

    /// A canonical member, if the set is nonempty.
    pub fn member_witness(&self) -> Option<UpWord> {
        self.witness_with_parity(false)
    }

    /// A canonical non-member, if the set is not everything.
    pub fn non_member_witness(&self) -> Option<UpWord> {
        self.witness_with_parity(true)
    }

    fn witness_with_parity(&self, odd: bool) -> Option<UpWord> {
        let reach = self.transitions.reachable_from(self.start);
        let all = self.all_states();
        let mut levels: Vec<u32> = self
            .priority
            .iter()
            .copied()
            .filter(|p| (p % 2 == 1) == odd)
            .collect();
        levels.sort_unstable();
        levels.dedup();
        let candidates = levels.into_iter().flat_map(|level| {
            let below: Vec<bool> = (0..self.num_states())
                .map(|q| reach[q] && self.priority[q] <= level)
                .collect();
            graph::cycle_anchors_at(&self.transitions, &self.priority, &reach, level)
                .into_iter()
                .filter_map(|anchor| self.transitions.lasso(self.start, anchor, None, &all, &below))
                .collect::<Vec<_>>()
        });
        let found = graph::best_witness(candidates);
        graph::shortest_witness(self.alphabet(), found, |w| {
            self.membership_up(w).is_ok_and(|member| member != odd)
        })
    }

    /// Maps every priority through `f` (used for acceptance-convention conversion).
    pub fn map_priorities(&self, f: impl Fn(u32) -> u32) -> ParitySet {
        ParitySet {
            transitions: self.transitions.clone(),
            start: self.start,
            priority: self.priority.iter().map(|&p| f(p)).collect(),
        }
    }

    /// Equivalent automaton with priorities compressed to a dense range.
    ///
    /// States on no cycle get the lowest priority; remaining priorities are
    /// renumbered order- and parity-preservingly starting from 0 or 1.
    pub fn normalized(&self) -> ParitySet {
        let mut on_cycle = vec![false; self.num_states()];
        for scc in self.transitions.cyclic_sccs(&self.all_states()) {
            for q in scc {
                on_cycle[q] = true;
            }
        }
        let mut values: Vec<u32> = (0..self.num_states())
            .filter(|&q| on_cycle[q])
            .map(|q| self.priority[q])
            .collect();
        values.sort_unstable();
        values.dedup();
        let mut mapped = Vec::with_capacity(values.len());
        let mut next = 0u32;
        for &v in &values {
            if next % 2 != v % 2 {
                next += 1;
            }
            mapped.push(next);
        }
        let priority = (0..self.num_states())
            .map(|q| {
                if on_cycle[q] {
                    mapped[values.binary_search(&self.priority[q]).expect("present")]
                } else {
                    0
                }
            })
            .collect();
        ParitySet {
            transitions: self.transitions.clone(),
            start: self.start,
            priority,
        }
    }

    /// Number of distinct priorities on cycles, after normalization.
    pub fn index(&self) -> usize {
        let n = self.normalized();
        let mut p: Vec<u32> = n.priority.clone();
        p.sort_unstable();
        p.dedup();
        p.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn up(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let one = fixtures::f_one();
        assert!(!one.membership_up(&up("(0)")).unwrap());
        assert!(one.membership_up(&up("0001(0)")).unwrap());
        assert!(fixtures::f_inf1().membership_up(&up("(10)")).unwrap());
        assert!(!fixtures::f_inf1().membership_up(&up("111(0)")).unwrap());
    }

    #[test]
    fn complement_examples() {
        assert!(fixtures::f_full().complement().is_empty());
        assert!(fixtures::f_cyl1().complement().membership_up(&up("(0)")).unwrap());
    }

    #[test]
    fn alphabet_checked() {
        assert!(fixtures::f_one().membership_up(&up("(2)")).is_err());
    }

    #[test]
    fn emptiness_and_witnesses() {
        assert!(fixtures::f_empty().is_empty());
        assert!(!fixtures::f_one().is_empty());
        assert_eq!(fixtures::f_one().member_witness().unwrap(), up("(1)"));
        assert_eq!(fixtures::f_one().non_member_witness().unwrap(), up("(0)"));
        assert_eq!(fixtures::f_full().non_member_witness(), None);
        let w = fixtures::f_no11().member_witness().unwrap();
        assert!(fixtures::f_no11().membership_up(&w).unwrap());
    }

    #[test]
    fn normalization_keeps_membership() {
        let s = fixtures::f_no11().map_priorities(|p| p * 3 + 4);
        let n = s.normalized();
        for w in crate::corpus::canonical_up_words(Alphabet::binary(), 60) {
            assert_eq!(s.membership_up(&w).unwrap(), n.membership_up(&w).unwrap());
        }
    }
}
