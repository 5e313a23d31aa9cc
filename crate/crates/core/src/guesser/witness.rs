use crate::error::Result;
use crate::graph::{self, TransitionTable};
use crate::space::{ParitySet, UpWord};

use super::MooreGuesser;

/// Searches the product of `g` and `s` for a reachable cycle on which `g`
/// is wrong: either its output is constant but disagrees with membership,
/// or its output is not constant. `None` certifies that `g` guesses `s` on
/// every point, since any point's run settles into some product cycle.
///
/// Among all witnesses the shortest (prefix plus period) is returned, ties
/// broken lexicographically.
pub fn divergence_witness(g: &MooreGuesser, s: &ParitySet) -> Result<Option<UpWord>> {
    g.alphabet().ensure_same(s.alphabet())?;
    let (table, keys) = TransitionTable::explore(g.alphabet(), (g.start(), s.start()), |&(p, q), a| {
        (g.next(p, a), s.next(q, a))
    });
    let n = table.num_states();
    let output: Vec<bool> = keys.iter().map(|&(p, _)| g.output(p)).collect();
    let priority: Vec<u32> = keys.iter().map(|&(_, q)| s.priority(q)).collect();
    let all = vec![true; n];
    let mut candidates = Vec::new();

    // Constant output b on a cycle whose membership is the opposite bit.
    for b in [false, true] {
        let allowed: Vec<bool> = output.iter().map(|&o| o == b).collect();
        let wrong_parity_odd = b;
        let mut levels: Vec<u32> = (0..n)
            .filter(|&x| allowed[x] && (priority[x] % 2 == 1) == wrong_parity_odd)
            .map(|x| priority[x])
            .collect();
        levels.sort_unstable();
        levels.dedup();
        for level in levels {
            let below: Vec<bool> = (0..n).map(|x| allowed[x] && priority[x] <= level).collect();
            for anchor in graph::cycle_anchors_at(&table, &priority, &allowed, level) {
                candidates.extend(table.lasso(0, anchor, None, &all, &below));
            }
        }
    }

    // Cycles on which the output keeps changing.
    for scc in table.cyclic_sccs(&all) {
        let Some(&anchor) = scc.iter().find(|&&x| !output[x]) else {
            continue;
        };
        if !scc.iter().any(|&x| output[x]) {
            continue;
        }
        let mut inside = vec![false; n];
        let mut ones = vec![false; n];
        for &x in &scc {
            inside[x] = true;
            ones[x] = output[x];
        }
        candidates.extend(table.lasso(0, anchor, Some(&ones), &all, &inside));
    }

    let best = graph::shortest_witness(g.alphabet(), graph::best_witness(candidates), |w| {
        !g.verify_on_up(s, w).unwrap_or(true)
    });
    debug_assert!(best.as_ref().is_none_or(|w| !g.verify_on_up(s, w).unwrap_or(true)));
    Ok(best)
}
