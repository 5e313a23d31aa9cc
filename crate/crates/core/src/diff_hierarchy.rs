//! Difference-hierarchy sets `D_theta` and their conversions to and from
//! guessers with fewer than `theta + 1` mind changes.
//!
//! A point lies in `D_theta(A_0 ⊆ A_1 ⊆ ...)` iff it lies in some `A_eta`
//! and the least such `eta` has parity opposite to `theta`. Chains here
//! are finite and each member is an [`OpenSet`], so "has entered `A_eta`"
//! is monotone along a run and the product automaton is weak.

use crate::error::{Error, Result};
use crate::graph::TransitionTable;
use crate::guesser::{synthesize, MooreGuesser, RankedGuesser};
use crate::ordinal::{Ordinal, Parity};
use crate::remainder::remainder_chain;
use crate::space::{equivalent, open_subset, OpenSet, ParitySet};

/// An increasing chain `A_0 ⊆ .. ⊆ A_{theta-1}` of open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenChain {
    theta: Ordinal,
    sets: Vec<OpenSet>,
}

impl OpenChain {
    pub fn new(sets: Vec<OpenSet>) -> Result<OpenChain> {
        if sets.is_empty() {
            return Err(Error::InvalidChain("theta must be at least 1".into()));
        }
        for pair in sets.windows(2) {
            pair[0].alphabet().ensure_same(pair[1].alphabet())?;
        }
        for (i, pair) in sets.windows(2).enumerate() {
            if !open_subset(&pair[0], &pair[1])? {
                return Err(Error::ChainNotIncreasing(i));
            }
        }
        Ok(OpenChain {
            theta: Ordinal::finite(sets.len() as u64),
            sets,
        })
    }

    pub fn theta(&self) -> &Ordinal {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[OpenSet] {
        &self.sets
    }

    fn explore_product(&self) -> (TransitionTable, Vec<Vec<usize>>) {
        let alphabet = self.sets[0].alphabet();
        let start: Vec<usize> = self.sets.iter().map(|a| a.automaton().start()).collect();
        TransitionTable::explore(alphabet, start, |states, a| {
            states
                .iter()
                .zip(&self.sets)
                .map(|(&q, set)| set.automaton().next(q, a))
                .collect()
        })
    }
}

/// The automaton for `D_theta` of the chain.
pub fn d_theta(chain: &OpenChain) -> ParitySet {
    let theta_parity = chain.theta.parity();
    let (table, keys) = chain.explore_product();
    let priority = keys
        .iter()
        .map(|states| {
            let least = states.iter().zip(&chain.sets).position(|(&q, set)| set.is_target(q));
            let member = least.is_some_and(|eta| Parity::of_bit(eta % 2 == 1) != theta_parity);
            u32::from(!member)
        })
        .collect();
    ParitySet::new(table, 0, priority).expect("product is well formed")
}

/// The bounded guesser for `D_alpha` of the chain, codomain `alpha + 1`.
///
/// At a state of the chain product, `[sigma] ⊆ A_eta` iff every infinite
/// run of `A_eta` from its component state enters the target. With `eta`
/// the least such index the guess is `eta ≢ alpha` and the bound is `eta`;
/// when no index qualifies the guess is 0 and the bound is `alpha`.
pub fn chain_to_guesser(chain: &OpenChain) -> RankedGuesser {
    let alpha = chain.len();
    let sure: Vec<Vec<bool>> = chain.sets.iter().map(OpenSet::surely_enters).collect();
    let (table, keys) = chain.explore_product();
    let least: Vec<Option<usize>> = keys
        .iter()
        .map(|states| (0..alpha).find(|&eta| sure[eta][states[eta]]))
        .collect();
    let output = least.iter().map(|l| l.is_some_and(|eta| eta % 2 != alpha % 2)).collect();
    let bound = least
        .iter()
        .map(|l| Ordinal::finite(l.unwrap_or(alpha) as u64))
        .collect();
    let guesser = MooreGuesser::new(table, 0, output).expect("product is well formed");
    RankedGuesser::new(guesser, bound, Ordinal::finite(alpha as u64 + 1)).expect("one bound per state")
}

fn ensure_bound(rg: &RankedGuesser) -> Result<()> {
    match rg.bound_violation() {
        Some(msg) => Err(Error::BoundViolation(msg)),
        None => Ok(()),
    }
}

/// Rebuilds the bound so that its parity changes exactly where the output
/// changes, keeping the root bound.
///
/// Along a word, the new bound stays put while the output does; at an output
/// change it becomes the old bound or its successor, whichever has parity
/// opposite to the previous new bound. The result depends on the path, so
/// states are paired with the new bound; when every state sees a single
/// value the original state space is kept.
pub fn normalize_h(rg: &RankedGuesser) -> Result<RankedGuesser> {
    ensure_bound(rg)?;
    let g = rg.guesser();
    let mut failure = None;
    let start = (g.start(), rg.bound(g.start()).clone());
    let (table, keys) = TransitionTable::explore(g.alphabet(), start, |(p, h), a| {
        let t = g.next(*p, a);
        if g.output(t) == g.output(*p) {
            return (t, h.clone());
        }
        let base = rg.bound(t);
        let next = if base.parity() != h.parity() {
            base.clone()
        } else {
            base.succ().unwrap_or_else(|e| {
                failure = Some(e);
                base.clone()
            })
        };
        (t, next)
    });
    if let Some(e) = failure {
        return Err(e.into());
    }

    let mut per_state: Vec<Option<&Ordinal>> = vec![None; g.num_states()];
    let mut single_valued = true;
    for (p, h) in &keys {
        match per_state[*p] {
            None => per_state[*p] = Some(h),
            Some(prev) if prev == h => {}
            Some(_) => single_valued = false,
        }
    }
    let out = if single_valued {
        let bound = (0..g.num_states())
            .map(|p| per_state[p].cloned().unwrap_or_else(|| rg.bound(p).clone()))
            .collect();
        RankedGuesser::new(g.clone(), bound, rg.codomain().clone())?
    } else {
        let output = keys.iter().map(|(p, _)| g.output(*p)).collect();
        let bound = keys.iter().map(|(_, h)| h.clone()).collect();
        RankedGuesser::new(MooreGuesser::new(table, 0, output)?, bound, rg.codomain().clone())?
    };
    ensure_bound(&out)?;
    Ok(out)
}

/// The bound parity changes on a reachable transition iff the output does.
pub fn parity_tracks_output(rg: &RankedGuesser) -> bool {
    let g = rg.guesser();
    let reach = g.transitions().reachable_from(g.start());
    (0..g.num_states()).filter(|&p| reach[p]).all(|p| {
        g.transitions().successors(p).iter().all(|&t| {
            let parity_changes = rg.bound(t).parity() != rg.bound(p).parity();
            let output_changes = g.output(t) != g.output(p);
            parity_changes == output_changes
        })
    })
}

/// Copies the guesser with a fresh start state (same output and transitions
/// as the old start) carrying the given bound and output.
fn with_fresh_root(rg: &RankedGuesser, root_output: bool, root_bound: Ordinal) -> Result<RankedGuesser> {
    let g = rg.guesser();
    let n = g.num_states();
    let mut rows: Vec<Vec<usize>> = (0..n).map(|p| g.transitions().successors(p).to_vec()).collect();
    rows.push(g.transitions().successors(g.start()).to_vec());
    let mut output = g.outputs().to_vec();
    output.push(root_output);
    let mut bound = rg.bounds().to_vec();
    bound.push(root_bound);
    let guesser = MooreGuesser::from_rows(g.alphabet(), n, rows, output)?;
    Ok(RankedGuesser::new(guesser, bound, rg.codomain().clone())?.trim())
}

/// Adjusts the bound so that its limit is anticongruent to the guess when
/// the root guess is congruent to the codomain, and congruent otherwise.
pub fn make_anticongruent(rg: &RankedGuesser) -> Result<RankedGuesser> {
    ensure_bound(rg)?;
    let g = rg.guesser();
    let root_guess = Parity::of_bit(g.output(g.start()));
    let root_bound = rg.bound(g.start());
    let wants_opposite = root_guess == rg.codomain().parity();
    let opposite = root_bound.parity() != root_guess;
    let prepared = if wants_opposite == opposite {
        rg.clone()
    } else {
        let raised = root_bound.succ()?;
        if raised >= *rg.codomain() {
            return Err(Error::BoundViolation(format!(
                "cannot raise root bound {root_bound} below codomain {}",
                rg.codomain()
            )));
        }
        with_fresh_root(rg, g.output(g.start()), raised)?
    };
    normalize_h(&prepared)
}

/// A variant whose root guess is 0, raising the root bound by one if the
/// root currently guesses 1. `None` if the codomain leaves no room.
pub fn reroot_zero(rg: &RankedGuesser) -> Result<Option<RankedGuesser>> {
    let g = rg.guesser();
    if !g.output(g.start()) {
        return Ok(Some(rg.clone()));
    }
    let raised = rg.bound(g.start()).succ()?;
    if raised >= *rg.codomain() {
        return Ok(None);
    }
    Ok(Some(with_fresh_root(rg, false, raised)?))
}

/// The chain `A_eta = {f : H(f) <= eta}` for `eta < alpha`, where the
/// codomain is `alpha + 1` and the root guess is 0.
pub fn guesser_to_chain(rg: &RankedGuesser) -> Result<OpenChain> {
    let alpha = rg
        .codomain()
        .as_finite()
        .filter(|&c| c >= 2)
        .ok_or_else(|| Error::InvalidCodomain(rg.codomain().to_string()))?
        - 1;
    ensure_bound(rg)?;
    if rg.guesser().output(rg.guesser().start()) {
        return Err(Error::RootNotZero);
    }
    let adjusted = make_anticongruent(rg)?.trim();
    let g = adjusted.guesser();
    let sets = (0..alpha)
        .map(|eta| {
            let eta = Ordinal::finite(eta);
            let targets: Vec<bool> = adjusted.bounds().iter().map(|h| *h <= eta).collect();
            OpenSet::from_targets(g.transitions().clone(), g.start(), &targets)
        })
        .collect::<Result<Vec<_>>>()?;
    OpenChain::new(sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `S` itself is in `D_alpha`.
    SelfSide,
    /// The complement is in `D_alpha`.
    Complement,
    Both,
    Neither,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::SelfSide => "SELF",
            Side::Complement => "COMPLEMENT",
            Side::Both => "BOTH",
            Side::Neither => "NEITHER",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    /// Least `alpha` with `S_alpha` empty; `None` when not guessable.
    pub rank: Option<Ordinal>,
    pub side: Side,
    /// Witnessing chain for `S` (sides SELF and BOTH) or for its complement.
    pub chain: Option<OpenChain>,
    /// Chain for the complement when the side is BOTH.
    pub complement_chain: Option<OpenChain>,
}

fn certified_chain(rg: &RankedGuesser, target: &ParitySet) -> Result<Option<OpenChain>> {
    let Some(rooted) = reroot_zero(rg)? else {
        return Ok(None);
    };
    let chain = guesser_to_chain(&rooted)?;
    Ok(equivalent(&d_theta(&chain), target)?.then_some(chain))
}

/// Places `S` or its complement in `D_alpha` where `alpha + 1` is the rank
/// (lifted to `alpha = 1` for rank 1).
pub fn classify(s: &ParitySet) -> Result<Classification> {
    let trace = remainder_chain(s);
    let Some(rank) = trace.mind_change_rank() else {
        return Ok(Classification {
            rank: None,
            side: Side::Neither,
            chain: None,
            complement_chain: None,
        });
    };
    let alpha = rank.as_finite().expect("finite-state ranks are finite").saturating_sub(1).max(1);
    let rg = synthesize(s)?.with_codomain(Ordinal::finite(alpha + 1));
    let own = certified_chain(&rg, s)?;
    let other = certified_chain(&rg.flipped(), &s.complement())?;
    let (side, chain, complement_chain) = match (own, other) {
        (Some(a), Some(b)) => (Side::Both, Some(a), Some(b)),
        (Some(a), None) => (Side::SelfSide, Some(a), None),
        (None, Some(b)) => (Side::Complement, Some(b), None),
        (None, None) => (Side::Neither, None, None),
    };
    Ok(Classification {
        rank: Some(rank),
        side,
        chain,
        complement_chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::canonical_up_words;
    use crate::fixtures::{self, contains_1, contains_11};
    use crate::guesser::divergence_witness;
    use crate::space::{Alphabet, Word};

    fn o(n: u64) -> Ordinal {
        Ordinal::finite(n)
    }

    fn no11_chain() -> OpenChain {
        OpenChain::new(vec![contains_11(), contains_1()]).unwrap()
    }

    #[test]
    fn d_theta_examples() {
        let one = OpenChain::new(vec![contains_1()]).unwrap();
        assert!(equivalent(&d_theta(&one), &fixtures::f_one()).unwrap());
        assert!(equivalent(&d_theta(&no11_chain()), &fixtures::f_no11()).unwrap());
        let same = OpenChain::new(vec![contains_1(), contains_1()]).unwrap();
        assert!(d_theta(&same).is_empty());
    }

    #[test]
    fn chain_must_increase() {
        assert!(matches!(
            OpenChain::new(vec![contains_1(), contains_11()]),
            Err(Error::ChainNotIncreasing(0))
        ));
        assert!(OpenChain::new(vec![]).is_err());
    }

    #[test]
    fn chain_to_guesser_examples() {
        let one = OpenChain::new(vec![contains_1()]).unwrap();
        let rg = chain_to_guesser(&one);
        assert_eq!(rg.codomain(), &o(2));
        assert!(rg.check_bound());
        let canonical = synthesize(&fixtures::f_one()).unwrap();
        for sigma in Alphabet::binary().words_up_to(6) {
            assert_eq!(
                rg.guesser().evaluate(&sigma).unwrap(),
                canonical.guesser().evaluate(&sigma).unwrap()
            );
        }

        let rg = chain_to_guesser(&no11_chain());
        assert!(rg.check_bound());
        assert_eq!(divergence_witness(rg.guesser(), &fixtures::f_no11()).unwrap(), None);
        let canonical = synthesize(&fixtures::f_no11()).unwrap();
        for sigma in Alphabet::binary().words_up_to(6) {
            assert!(rg.guesser().mind_changes(&sigma).unwrap() <= 2);
            assert_eq!(
                rg.guesser().evaluate(&sigma).unwrap(),
                canonical.guesser().evaluate(&sigma).unwrap()
            );
        }

        let empty = OpenChain::new(vec![OpenSet::empty(Alphabet::binary())]).unwrap();
        let rg = chain_to_guesser(&empty);
        assert_eq!(rg.guesser().outputs(), &[false]);
        assert_eq!(rg.bound(rg.guesser().start()), &o(1));
    }

    #[test]
    fn normalize_examples() {
        let no11 = synthesize(&fixtures::f_no11()).unwrap();
        let n = normalize_h(&no11).unwrap();
        assert!(parity_tracks_output(&n));
        assert_eq!(n.bound(n.guesser().start()), no11.bound(no11.guesser().start()));
        // already normalized: fixpoint
        let again = normalize_h(&n).unwrap();
        assert_eq!(again, n);
        for sigma in Alphabet::binary().words_up_to(6) {
            assert_eq!(again.bound_at(&sigma).unwrap(), n.bound_at(&sigma).unwrap());
        }
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        let rg = RankedGuesser::new(zero, vec![o(0)], o(1)).unwrap();
        assert_eq!(normalize_h(&rg).unwrap(), rg);
    }

    #[test]
    fn normalize_raises_bounds_where_needed() {
        // outputs 0 -> 1 with bounds 2 -> 0: parity would not change, so 0 becomes 1
        let g = MooreGuesser::from_rows(Alphabet::binary(), 0, vec![vec![1, 1], vec![1, 1]], vec![false, true]).unwrap();
        let rg = RankedGuesser::new(g, vec![o(2), o(0)], o(3)).unwrap();
        let n = normalize_h(&rg).unwrap();
        assert_eq!(n.bounds(), &[o(2), o(1)]);
        assert!(parity_tracks_output(&n));
    }

    #[test]
    fn normalize_rejects_invalid_input() {
        let g = MooreGuesser::from_rows(Alphabet::binary(), 0, vec![vec![1, 1], vec![1, 1]], vec![false, true]).unwrap();
        let rg = RankedGuesser::new(g, vec![o(1), o(1)], o(3)).unwrap();
        assert!(matches!(normalize_h(&rg), Err(Error::BoundViolation(_))));
    }

    fn congruence_holds(rg: &RankedGuesser, words: &[crate::space::UpWord]) -> bool {
        let g = rg.guesser();
        let root = Parity::of_bit(g.output(g.start()));
        let anti = root == rg.codomain().parity();
        words.iter().all(|w| match g.limit_on_up(w).unwrap() {
            crate::guesser::Limit::Value(b) => {
                let h = rg.bound_limit_on_up(w).unwrap().parity();
                (h != Parity::of_bit(b)) == anti
            }
            crate::guesser::Limit::Diverges => true,
        })
    }

    #[test]
    fn anticongruent_examples() {
        let words = canonical_up_words(Alphabet::binary(), 100);
        let one = synthesize(&fixtures::f_one()).unwrap().with_codomain(o(3));
        let adjusted = make_anticongruent(&one).unwrap();
        assert!(adjusted.check_bound());
        assert!(congruence_holds(&adjusted, &words));
        assert_eq!(make_anticongruent(&adjusted).unwrap().bounds(), adjusted.bounds());

        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        let rg = RankedGuesser::new(zero, vec![o(0)], o(1)).unwrap();
        let adjusted = make_anticongruent(&rg).unwrap();
        assert!(congruence_holds(&adjusted, &words));
    }

    #[test]
    fn guesser_to_chain_examples() {
        let one = synthesize(&fixtures::f_one()).unwrap();
        let chain = guesser_to_chain(&one).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(equivalent(&d_theta(&chain), &fixtures::f_one()).unwrap());

        let no11 = synthesize(&fixtures::f_no11()).unwrap();
        let chain = guesser_to_chain(&no11).unwrap();
        assert_eq!(chain.len(), 2);
        assert!(equivalent(&d_theta(&chain), &fixtures::f_no11()).unwrap());

        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        let rg = RankedGuesser::new(zero, vec![o(0)], o(2)).unwrap();
        let chain = guesser_to_chain(&rg).unwrap();
        assert!(d_theta(&chain).is_empty());
    }

    #[test]
    fn guesser_to_chain_errors() {
        let flipped = synthesize(&fixtures::f_one()).unwrap().flipped();
        assert!(matches!(guesser_to_chain(&flipped), Err(Error::RootNotZero)));
        let zero = MooreGuesser::constant(Alphabet::binary(), false);
        let rg = RankedGuesser::new(zero, vec![o(0)], o(1)).unwrap();
        assert!(matches!(guesser_to_chain(&rg), Err(Error::InvalidCodomain(_))));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&fixtures::f_one()).unwrap();
        assert_eq!((c.rank, c.side), (Some(o(2)), Side::SelfSide));
        assert_eq!(c.chain.unwrap().len(), 1);

        let c = classify(&fixtures::f_one().complement()).unwrap();
        assert_eq!((c.rank, c.side), (Some(o(2)), Side::Complement));
        assert!(equivalent(&d_theta(c.chain.as_ref().unwrap()), &fixtures::f_one()).unwrap());

        let c = classify(&fixtures::f_inf1()).unwrap();
        assert_eq!((c.rank, c.side), (None, Side::Neither));
        assert!(c.chain.is_none());

        let c = classify(&fixtures::f_no11()).unwrap();
        assert_eq!((c.rank, c.side), (Some(o(3)), Side::SelfSide));
        assert_eq!(c.chain.unwrap().len(), 2);

        // rank 1: both the empty set and its complement are in D_1
        let c = classify(&fixtures::f_empty()).unwrap();
        assert_eq!(c.side, Side::Both);
    }

    #[test]
    fn singleton_chain_is_its_open_set() {
        for s in ["1", "10", "011"] {
            let a = OpenSet::contains_factor(Alphabet::binary(), &s.parse::<Word>().unwrap()).unwrap();
            let chain = OpenChain::new(vec![a.clone()]).unwrap();
            assert!(equivalent(&d_theta(&chain), a.automaton()).unwrap());
        }
    }
}
