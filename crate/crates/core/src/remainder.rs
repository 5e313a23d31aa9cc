//! The remainder chain `S_0 ⊇ S_1 ⊇ ...` computed on automaton states.
//!
//! Stage `b+1` keeps the words of stage `b` that have infinite extensions
//! inside `[S_b]` on both sides of `S`. For a deterministic automaton this
//! is a property of the state a word reaches, so the chain is carried by
//! state sets `Q_0 ⊇ Q_1 ⊇ ...`: a word lies in `S_b` iff every state along
//! its run lies in `Q_b`, and
//!
//! `Q_{b+1} = { q in Q_b : from q, inside Q_b, some run accepts and some run rejects }`.
//!
//! Finite automata stabilize after finitely many successor steps, so limit
//! stages never need to be formed explicitly.

use crate::graph;
use crate::ordinal::{Ordinal, Rank};
use crate::space::{ParitySet, Word};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct RemainderTrace {
    subject: ParitySet,
    chain: Vec<Vec<bool>>,
    accepting: Vec<Vec<bool>>,
    rejecting: Vec<Vec<bool>>,
    alpha: usize,
    state_rank: Vec<Rank>,
}

/// Computes the chain to its fixpoint. The subject is pruned to reachable
/// states first; all state indices in the trace refer to [`RemainderTrace::subject`].
pub fn remainder_chain(s: &ParitySet) -> RemainderTrace {
    let subject = s.trim();
    let n = subject.num_states();
    let table = subject.transitions();
    let prio = subject.priorities();

    let mut chain = vec![vec![true; n]];
    let mut accepting = Vec::new();
    let mut rejecting = Vec::new();
    loop {
        let current = chain.last().expect("nonempty chain");
        let acc = graph::reaches_cycle_of_parity(table, prio, current, false);
        let rej = graph::reaches_cycle_of_parity(table, prio, current, true);
        let next: Vec<bool> = (0..n).map(|q| current[q] && acc[q] && rej[q]).collect();
        accepting.push(acc);
        rejecting.push(rej);
        if &next == current {
            break;
        }
        chain.push(next);
    }

    let fixpoint = chain.len() - 1;
    let state_rank = (0..n)
        .map(|q| match chain.iter().position(|stage| !stage[q]) {
            Some(b) => Rank::finite(b as u64),
            None => Rank::Infinity,
        })
        .collect();

    // Word-level stabilization: S_b = S_{b+1} iff every state reachable from
    // the start inside Q_b is also in Q_{b+1}.
    let alpha = (0..=fixpoint)
        .find(|&b| {
            let stage = &chain[b];
            let next = chain.get(b + 1).unwrap_or(stage);
            if !stage[subject.start()] {
                return true;
            }
            let mut start_only = vec![false; n];
            start_only[subject.start()] = true;
            // forward reachability inside the stage
            let mut seen = start_only;
            let mut stack = vec![subject.start()];
            while let Some(q) = stack.pop() {
                if !next[q] {
                    return false;
                }
                for &t in table.successors(q) {
                    if stage[t] && !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            true
        })
        .expect("the fixpoint stage is stable");

    RemainderTrace {
        subject,
        chain,
        accepting,
        rejecting,
        alpha,
        state_rank,
    }
}

impl RemainderTrace {
    pub fn subject(&self) -> &ParitySet {
        &self.subject
    }

    /// `Q_0, .., Q_N` with `Q_N` the state fixpoint.
    pub fn chain(&self) -> &[Vec<bool>] {
        &self.chain
    }

    /// Index `N` of the state fixpoint.
    pub fn fixpoint_index(&self) -> usize {
        self.chain.len() - 1
    }

    /// The least `b` with `S_b = S_{b+1}` (on words).
    pub fn alpha(&self) -> Ordinal {
        Ordinal::finite(self.alpha as u64)
    }

    pub fn state_rank(&self, q: usize) -> &Rank {
        &self.state_rank[q]
    }

    pub fn state_ranks(&self) -> &[Rank] {
        &self.state_rank
    }

    /// Stage `b` as a state mask; stages beyond the fixpoint repeat it.
    pub fn stage(&self, b: usize) -> &[bool] {
        &self.chain[b.min(self.fixpoint_index())]
    }

    fn stage_of(&self, alpha: &Ordinal) -> &[bool] {
        match alpha.as_finite() {
            Some(b) => self.stage(usize::try_from(b).unwrap_or(usize::MAX)),
            None => self.stage(usize::MAX),
        }
    }

    /// From `q`, some run staying inside `Q_b` is accepted.
    pub fn can_accept_within(&self, b: usize, q: usize) -> bool {
        self.accepting[b.min(self.fixpoint_index())][q]
    }

    /// From `q`, some run staying inside `Q_b` is rejected.
    pub fn can_reject_within(&self, b: usize, q: usize) -> bool {
        self.rejecting[b.min(self.fixpoint_index())][q]
    }

    /// `beta(sigma)`: the least stage not containing `sigma`.
    pub fn word_rank(&self, sigma: &Word) -> Result<Rank> {
        let run = self.subject.transitions().run(self.subject.start(), sigma.symbols())?;
        Ok(run
            .into_iter()
            .map(|q| self.state_rank[q].clone())
            .min()
            .expect("runs are nonempty"))
    }

    pub fn in_stage(&self, sigma: &Word, alpha: &Ordinal) -> Result<bool> {
        Ok(self.word_rank(sigma)? > Rank::At(alpha.clone()))
    }

    /// `[S_alpha]` is empty: no infinite run from the start stays in `Q_alpha`.
    pub fn rm_alpha_empty(&self, alpha: &Ordinal) -> bool {
        let stage = self.stage_of(alpha);
        let start = self.subject.start();
        !stage[start] || !self.subject.transitions().has_infinite_path(stage)[start]
    }

    /// `S_alpha` is empty as a set of words.
    pub fn stage_empty(&self, alpha: &Ordinal) -> bool {
        !self.stage_of(alpha)[self.subject.start()]
    }

    /// Stages `b` with `S_b` nonempty while `[S_b]` is empty.
    pub fn finite_only_stages(&self) -> Vec<usize> {
        (0..=self.fixpoint_index())
            .filter(|&b| {
                let o = Ordinal::finite(b as u64);
                !self.stage_empty(&o) && self.rm_alpha_empty(&o)
            })
            .collect()
    }

    /// `S_infinity` is empty.
    pub fn is_guessable(&self) -> bool {
        !self.chain[self.fixpoint_index()][self.subject.start()]
    }

    /// Least `alpha` with `S_alpha` empty, if any.
    pub fn mind_change_rank(&self) -> Option<Ordinal> {
        self.state_rank[self.subject.start()].ordinal().cloned()
    }
}

pub fn is_guessable(s: &ParitySet) -> bool {
    remainder_chain(s).is_guessable()
}
