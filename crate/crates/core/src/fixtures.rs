//! The canonical binary fixtures used throughout the tests, the CLI and the
//! acceptance suite.

use crate::space::{Alphabet, OpenSet, ParitySet, Word};

fn binary(start: usize, rows: Vec<Vec<usize>>, priority: Vec<u32>) -> ParitySet {
    ParitySet::from_rows(Alphabet::binary(), start, rows, priority).expect("fixture is well formed")
}

/// The empty set.
pub fn f_empty() -> ParitySet {
    ParitySet::empty(Alphabet::binary())
}

/// All of `{0,1}^omega`.
pub fn f_full() -> ParitySet {
    ParitySet::full(Alphabet::binary())
}

/// `{f : f(0) = 1}`.
pub fn f_cyl1() -> ParitySet {
    binary(0, vec![vec![1, 2], vec![1, 1], vec![2, 2]], vec![1, 1, 0])
}

/// `{f : some f(n) = 1}`.
pub fn f_one() -> ParitySet {
    binary(0, vec![vec![0, 1], vec![1, 1]], vec![1, 0])
}

/// Contains a 1 and never the factor 11.
pub fn f_no11() -> ParitySet {
    binary(
        0,
        vec![vec![0, 1], vec![2, 3], vec![2, 1], vec![3, 3]],
        vec![1, 0, 0, 1],
    )
}

/// `{f : f(n) = 1 for infinitely many n}`.
pub fn f_inf1() -> ParitySet {
    binary(0, vec![vec![0, 1], vec![0, 1]], vec![1, 2])
}

/// Points containing the factor 11, as an open set.
pub fn contains_11() -> OpenSet {
    OpenSet::contains_factor(Alphabet::binary(), &Word::from(vec![1, 1])).expect("valid factor")
}

/// Points containing a 1, as an open set.
pub fn contains_1() -> OpenSet {
    OpenSet::contains_factor(Alphabet::binary(), &Word::from(vec![1])).expect("valid factor")
}

/// All six fixtures with their names, in table order.
pub fn all() -> Vec<(&'static str, ParitySet)> {
    vec![
        ("F_EMPTY", f_empty()),
        ("F_FULL", f_full()),
        ("F_CYL1", f_cyl1()),
        ("F_ONE", f_one()),
        ("F_NO11", f_no11()),
        ("F_INF1", f_inf1()),
    ]
}
