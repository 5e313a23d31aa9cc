//! Boolean combinations of parity automata.
//!
//! The acceptance of a product run depends on the pair (max priority of the
//! left run, max priority of the right run) seen infinitely often. When one
//! side is weak (priority constant on each strongly connected component)
//! the plain pair product suffices. Otherwise the left side's priority
//! levels are tracked together with a register per level holding the
//! largest right priority seen since the last visit to that level or above;
//! the largest (level, register) pair emitted infinitely often is exactly
//! (left max, right max), so a lexicographic priority assignment on pairs
//! is exact.

use crate::error::Result;
use crate::graph::TransitionTable;

use super::ParitySet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    /// `left \ right`
    Diff,
}

impl BoolOp {
    pub fn apply(self, left: bool, right: bool) -> bool {
        match self {
            BoolOp::And => left && right,
            BoolOp::Or => left || right,
            BoolOp::Xor => left != right,
            BoolOp::Diff => left && !right,
        }
    }
}

fn is_weak(s: &ParitySet) -> bool {
    let all = vec![true; s.num_states()];
    s.transitions().cyclic_sccs(&all).iter().all(|scc| {
        let p = s.priority(scc[0]);
        scc.iter().all(|&q| s.priority(q) == p)
    })
}

fn sorted_levels(s: &ParitySet) -> Vec<u32> {
    let mut v = s.priorities().to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Assigns nondecreasing priorities to an ordered sequence of outcomes so
/// that each priority is even exactly when the outcome accepts.
fn monotone_priorities(accepts: impl IntoIterator<Item = bool>) -> Vec<u32> {
    let mut out = Vec::new();
    let mut cur = 0u32;
    for acc in accepts {
        if cur.is_multiple_of(2) != acc {
            cur += 1;
        }
        out.push(cur);
    }
    out
}

/// Pointwise boolean combination `op(S, T)`.
pub fn product_boolean(s: &ParitySet, t: &ParitySet, op: BoolOp) -> Result<ParitySet> {
    s.alphabet().ensure_same(t.alphabet())?;
    let s = s.trim().normalized();
    let t = t.trim().normalized();
    // `weak` plays the left role whenever possible.
    let swapped = !is_weak(&s) && is_weak(&t);
    let (left, right) = if swapped { (&t, &s) } else { (&s, &t) };
    let f = move |l, r| if swapped { op.apply(r, l) } else { op.apply(l, r) };
    let product = if is_weak(left) {
        weak_product(left, right, &f)
    } else {
        register_product(left, right, &f)
    };
    Ok(product.trim().normalized())
}

fn weak_product(left: &ParitySet, right: &ParitySet, f: &dyn Fn(bool, bool) -> bool) -> ParitySet {
    let right_levels = sorted_levels(right);
    let (table, keys) = TransitionTable::explore(left.alphabet(), (left.start(), right.start()), |&(p, q), a| {
        (left.next(p, a), right.next(q, a))
    });
    let priority = keys
        .iter()
        .map(|&(p, q)| {
            let l_acc = left.priority(p).is_multiple_of(2);
            // Priorities for the fixed left outcome, monotone in the right priority.
            let by_right = monotone_priorities(right_levels.iter().map(|y| f(l_acc, y % 2 == 0)));
            let idx = right_levels.binary_search(&right.priority(q)).expect("level");
            by_right[idx]
        })
        .collect();
    ParitySet::new(table, 0, priority).expect("product is well formed")
}

fn register_product(left: &ParitySet, right: &ParitySet, f: &dyn Fn(bool, bool) -> bool) -> ParitySet {
    let left_levels = sorted_levels(left);
    let right_levels = sorted_levels(right);
    let level_of = |p: usize| left_levels.binary_search(&left.priority(p)).expect("level");
    let pairs = left_levels
        .iter()
        .flat_map(|&x| right_levels.iter().map(move |&y| (x, y)));
    let pair_priority = monotone_priorities(pairs.map(|(x, y)| f(x % 2 == 0, y % 2 == 0)));
    let width = right_levels.len();

    type Key = (usize, usize, Vec<Option<u32>>);
    let start: Key = (left.start(), right.start(), vec![None; left_levels.len()]);
    let (table, keys) = TransitionTable::explore(left.alphabet(), start, |(p, q, reg): &Key, a| {
        let j = level_of(*p);
        let y = right.priority(*q);
        let next_reg = reg
            .iter()
            .enumerate()
            .map(|(i, r)| if i <= j { None } else { Some(r.map_or(y, |r| r.max(y))) })
            .collect();
        (left.next(*p, a), right.next(*q, a), next_reg)
    });
    let priority = keys
        .iter()
        .map(|(p, q, reg)| {
            let j = level_of(*p);
            let y = reg[j].map_or(right.priority(*q), |r| r.max(right.priority(*q)));
            let yi = right_levels.binary_search(&y).expect("level");
            pair_priority[j * width + yi]
        })
        .collect();
    ParitySet::new(table, 0, priority).expect("product is well formed")
}

/// Same points; decided by emptiness of the symmetric difference.
pub fn equivalent(s: &ParitySet, t: &ParitySet) -> Result<bool> {
    Ok(product_boolean(s, t, BoolOp::Xor)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{canonical_up_words, random_parity_set};
    use crate::fixtures;
    use crate::space::{Alphabet, OpenSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn product_examples() {
        let cyl = fixtures::f_cyl1();
        assert!(product_boolean(&cyl, &cyl.complement(), BoolOp::And).unwrap().is_empty());
        let one = fixtures::f_one();
        let same = product_boolean(&one, &fixtures::f_full(), BoolOp::And).unwrap();
        assert!(equivalent(&same, &one).unwrap());
        let c11 = OpenSet::contains_factor(Alphabet::binary(), &"11".parse().unwrap()).unwrap();
        assert!(product_boolean(c11.automaton(), &one, BoolOp::Diff).unwrap().is_empty());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&fixtures::f_one(), &fixtures::f_one()).unwrap());
        assert!(!equivalent(&fixtures::f_one(), &fixtures::f_full()).unwrap());
        assert!(equivalent(&fixtures::f_one().complement().complement(), &fixtures::f_one()).unwrap());
    }

    #[test]
    fn mismatched_alphabets() {
        let three = ParitySet::full(Alphabet::new(3).unwrap());
        assert!(product_boolean(&fixtures::f_one(), &three, BoolOp::Or).is_err());
    }

    /// Pointwise correctness on random non-weak operands (exercises the
    /// register construction).
    #[test]
    fn pointwise_on_random_operands() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let words = canonical_up_words(Alphabet::binary(), 150);
        for _ in 0..40 {
            let s = random_parity_set(&mut rng, Alphabet::binary(), 5, 4);
            let t = random_parity_set(&mut rng, Alphabet::binary(), 5, 4);
            for op in [BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Diff] {
                let p = product_boolean(&s, &t, op).unwrap();
                for w in &words {
                    let expect = op.apply(s.membership_up(w).unwrap(), t.membership_up(w).unwrap());
                    assert_eq!(p.membership_up(w).unwrap(), expect, "{op:?} on {w}");
                }
            }
        }
    }
}
