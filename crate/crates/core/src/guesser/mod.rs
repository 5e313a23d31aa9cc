//! Finite-state guessers and mind-change bounds.
//!
//! A guesser reads a finite word and outputs a bit; it guesses `S` when its
//! outputs along the prefixes of every point converge to the point's
//! membership bit. Guessers here are Moore machines, so their limits on
//! ultimately periodic points are computed exactly, and correctness on all
//! points is certified by a cycle search on the product with the set.

mod synth;
mod witness;

pub use synth::{mind_change_rank, synthesize};
pub use witness::divergence_witness;

use crate::error::{Error, Result};
use crate::graph::TransitionTable;
use crate::ordinal::Ordinal;
use crate::space::{Alphabet, ParitySet, UpWord, Word};

/// Limit of a guesser's outputs along a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limit {
    Value(bool),
    Diverges,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MooreGuesser {
    transitions: TransitionTable,
    start: usize,
    output: Vec<bool>,
}

impl MooreGuesser {
    pub fn new(transitions: TransitionTable, start: usize, output: Vec<bool>) -> Result<MooreGuesser> {
        let n = transitions.num_states();
        if start >= n {
            return Err(Error::InvalidAutomaton(format!("start state {start} out of range")));
        }
        if output.len() != n {
            return Err(Error::InvalidAutomaton(format!("{} outputs for {n} states", output.len())));
        }
        Ok(MooreGuesser {
            transitions,
            start,
            output,
        })
    }

    pub fn from_rows(alphabet: Alphabet, start: usize, rows: Vec<Vec<usize>>, output: Vec<bool>) -> Result<MooreGuesser> {
        MooreGuesser::new(TransitionTable::new(alphabet, rows)?, start, output)
    }

    pub fn constant(alphabet: Alphabet, bit: bool) -> MooreGuesser {
        MooreGuesser::from_rows(alphabet, 0, vec![vec![0; alphabet.size()]], vec![bit]).expect("valid")
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

    pub fn output(&self, p: usize) -> bool {
        self.output[p]
    }

    pub fn outputs(&self) -> &[bool] {
        &self.output
    }

    pub fn next(&self, p: usize, a: usize) -> usize {
        self.transitions.next(p, a)
    }

    /// Restricts to reachable states, renumbered breadth-first from the start.
    /// Returns the trimmed guesser and the old index of each new state.
    pub fn trim(&self) -> (MooreGuesser, Vec<usize>) {
        let (transitions, old) = self.transitions.trim(self.start);
        let output = old.iter().map(|&p| self.output[p]).collect();
        (
            MooreGuesser {
                transitions,
                start: 0,
                output,
            },
            old,
        )
    }

    /// `1 - G`.
    pub fn flipped(&self) -> MooreGuesser {
        MooreGuesser {
            transitions: self.transitions.clone(),
            start: self.start,
            output: self.output.iter().map(|b| !b).collect(),
        }
    }

    pub fn evaluate(&self, sigma: &Word) -> Result<bool> {
        Ok(self.output[self.transitions.state_after(self.start, sigma.symbols())?])
    }

    pub fn limit_on_up(&self, w: &UpWord) -> Result<Limit> {
        let cycle = self.transitions.up_cycle(self.start, w)?;
        let first = self.output[cycle[0]];
        if cycle.iter().all(|&p| self.output[p] == first) {
            Ok(Limit::Value(first))
        } else {
            Ok(Limit::Diverges)
        }
    }

    /// Number of positions where the output differs from the previous one.
    pub fn mind_changes(&self, sigma: &Word) -> Result<usize> {
        let run = self.transitions.run(self.start, sigma.symbols())?;
        Ok(run.windows(2).filter(|w| self.output[w[0]] != self.output[w[1]]).count())
    }

    /// The limit on `w` exists and equals `S`'s membership bit.
    pub fn verify_on_up(&self, s: &ParitySet, w: &UpWord) -> Result<bool> {
        self.alphabet().ensure_same(s.alphabet())?;
        Ok(self.limit_on_up(w)? == Limit::Value(s.membership_up(w)?))
    }
}

pub fn evaluate(g: &MooreGuesser, sigma: &Word) -> Result<bool> {
    g.evaluate(sigma)
}

pub fn limit_on_up(g: &MooreGuesser, w: &UpWord) -> Result<Limit> {
    g.limit_on_up(w)
}

pub fn verify_on_up(g: &MooreGuesser, s: &ParitySet, w: &UpWord) -> Result<bool> {
    g.verify_on_up(s, w)
}

pub fn mind_changes(g: &MooreGuesser, sigma: &Word) -> Result<usize> {
    g.mind_changes(sigma)
}

/// A guesser with an ordinal-valued bound per state witnessing fewer than
/// `codomain` mind changes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedGuesser {
    guesser: MooreGuesser,
    bound: Vec<Ordinal>,
    codomain: Ordinal,
}

impl RankedGuesser {
    pub fn new(guesser: MooreGuesser, bound: Vec<Ordinal>, codomain: Ordinal) -> Result<RankedGuesser> {
        if bound.len() != guesser.num_states() {
            return Err(Error::InvalidAutomaton(format!(
                "{} bounds for {} states",
                bound.len(),
                guesser.num_states()
            )));
        }
        Ok(RankedGuesser {
            guesser,
            bound,
            codomain,
        })
    }

    pub fn guesser(&self) -> &MooreGuesser {
        &self.guesser
    }

    pub fn bound(&self, p: usize) -> &Ordinal {
        &self.bound[p]
    }

    pub fn bounds(&self) -> &[Ordinal] {
        &self.bound
    }

    pub fn codomain(&self) -> &Ordinal {
        &self.codomain
    }

    pub fn with_codomain(&self, codomain: Ordinal) -> RankedGuesser {
        RankedGuesser {
            codomain,
            ..self.clone()
        }
    }

    pub fn bound_at(&self, sigma: &Word) -> Result<&Ordinal> {
        let p = self.guesser.transitions.state_after(self.guesser.start, sigma.symbols())?;
        Ok(&self.bound[p])
    }

    /// `H(f)`: the eventual bound along `w`.
    pub fn bound_limit_on_up(&self, w: &UpWord) -> Result<Ordinal> {
        let cycle = self.guesser.transitions.up_cycle(self.guesser.start, w)?;
        Ok(cycle.iter().map(|&p| self.bound[p].clone()).min().expect("nonempty cycle"))
    }

    /// The first violated condition over reachable transitions, if any.
    pub fn bound_violation(&self) -> Option<String> {
        let g = &self.guesser;
        let reach = g.transitions.reachable_from(g.start);
        for p in (0..g.num_states()).filter(|&p| reach[p]) {
            if self.bound[p] >= self.codomain {
                return Some(format!("bound {} of state {p} is not below {}", self.bound[p], self.codomain));
            }
            for (a, &t) in g.transitions.successors(p).iter().enumerate() {
                if self.bound[t] > self.bound[p] {
                    return Some(format!("bound increases on {p} -{a}-> {t}"));
                }
                if g.output[t] != g.output[p] && self.bound[t] >= self.bound[p] {
                    return Some(format!("mind change without bound decrease on {p} -{a}-> {t}"));
                }
            }
        }
        None
    }

    /// Both bound conditions hold on every reachable transition and every
    /// reachable bound is below the codomain.
    pub fn check_bound(&self) -> bool {
        self.bound_violation().is_none()
    }

    pub fn trim(&self) -> RankedGuesser {
        let (guesser, old) = self.guesser.trim();
        RankedGuesser {
            guesser,
            bound: old.iter().map(|&p| self.bound[p].clone()).collect(),
            codomain: self.codomain.clone(),
        }
    }

    /// `(1 - G, H)`.
    pub fn flipped(&self) -> RankedGuesser {
        RankedGuesser {
            guesser: self.guesser.flipped(),
            ..self.clone()
        }
    }

    /// Distinct bound values on reachable states.
    pub fn distinct_bounds(&self) -> usize {
        let reach = self.guesser.transitions.reachable_from(self.guesser.start);
        let mut v: Vec<&Ordinal> = (0..self.bound.len()).filter(|&p| reach[p]).map(|p| &self.bound[p]).collect();
        v.sort();
        v.dedup();
        v.len()
    }
}

pub fn check_bound(rg: &RankedGuesser) -> bool {
    rg.check_bound()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn up(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    fn flipper() -> MooreGuesser {
        MooreGuesser::from_rows(Alphabet::binary(), 0, vec![vec![1, 1], vec![0, 0]], vec![false, true]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        for sigma in Alphabet::binary().words_up_to(4) {
            assert!(!zero.evaluate(&sigma).unwrap());
        }
        let g = synthesize(&fixtures::f_one()).unwrap();
        assert!(!g.guesser().evaluate(&w("00")).unwrap());
        assert!(g.guesser().evaluate(&w("010")).unwrap());
        assert!(zero.evaluate(&w("2")).is_err());
    }

    #[test]
    fn limit_examples() {
        let one = MooreGuesser::constant(Alphabet::binary(), true);
        assert_eq!(one.limit_on_up(&up("(0)")).unwrap(), Limit::Value(true));
        let g = synthesize(&fixtures::f_one()).unwrap();
        assert_eq!(g.guesser().limit_on_up(&up("(0)")).unwrap(), Limit::Value(false));
        assert_eq!(flipper().limit_on_up(&up("(01)")).unwrap(), Limit::Diverges);
    }

    #[test]
    fn verify_examples() {
        let g = synthesize(&fixtures::f_one()).unwrap();
        assert!(g.guesser().verify_on_up(&fixtures::f_one(), &up("(0)")).unwrap());
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        assert!(!zero.verify_on_up(&fixtures::f_full(), &up("(0)")).unwrap());
        let no11 = synthesize(&fixtures::f_no11()).unwrap();
        assert!(no11.guesser().verify_on_up(&fixtures::f_no11(), &up("10(0)")).unwrap());
        let three = ParitySet::full(Alphabet::new(3).unwrap());
        assert!(zero.verify_on_up(&three, &up("(0)")).is_err());
    }

    #[test]
    fn mind_change_examples() {
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        assert_eq!(zero.mind_changes(&w("0110")).unwrap(), 0);
        let one = synthesize(&fixtures::f_one()).unwrap();
        assert_eq!(one.guesser().mind_changes(&w("0010")).unwrap(), 1);
        let no11 = synthesize(&fixtures::f_no11()).unwrap();
        assert_eq!(no11.guesser().mind_changes(&w("0110")).unwrap(), 2);
    }

    #[test]
    fn check_bound_examples() {
        let g = synthesize(&fixtures::f_one()).unwrap();
        assert_eq!(g.codomain(), &Ordinal::finite(2));
        assert!(g.check_bound());
        assert!(!g.with_codomain(Ordinal::finite(1)).check_bound());
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        let rg = RankedGuesser::new(zero, vec![Ordinal::zero()], Ordinal::finite(1)).unwrap();
        assert!(rg.check_bound());
        // a mind change with a flat bound is rejected
        let flat = RankedGuesser::new(flipper(), vec![Ordinal::finite(1); 2], Ordinal::finite(3)).unwrap();
        assert!(!flat.check_bound());
    }

    #[test]
    fn bound_limits() {
        let g = synthesize(&fixtures::f_no11()).unwrap();
        assert_eq!(g.bound_limit_on_up(&up("(0)")).unwrap(), Ordinal::finite(2));
        assert_eq!(g.bound_limit_on_up(&up("(10)")).unwrap(), Ordinal::finite(1));
        assert_eq!(g.bound_limit_on_up(&up("(1)")).unwrap(), Ordinal::zero());
    }
}
