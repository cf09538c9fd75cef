use std::collections::HashMap;

use super::event::EventId;
use super::generator::Generator;

/// Minimal deterministic generator for the pair `(L(g), Lm(g))`.
///
/// Moore-style partition refinement on the reachable part. A missing
/// transition counts as its own class, so states are merged only when they
/// agree on both the generated and the marked futures. The initial state
/// is numbered 0.
pub fn minimize(g: &Generator) -> Generator {
    let acc = g.accessible();
    let n = acc.num_states();
    if n == 0 {
        return acc;
    }
    let mut class: Vec<usize> = (0..n).map(|s| usize::from(acc.is_marked(s))).collect();
    let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<(EventId, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|s| {
                let sig = (
                    class[s],
                    acc.transitions(s)
                        .iter()
                        .map(|&(e, t)| (e, class[t]))
                        .collect::<Vec<_>>(),
                );
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut marked = vec![false; count];
    let mut delta = vec![Vec::new(); count];
    let mut filled = vec![false; count];
    for s in 0..n {
        let c = class[s];
        if !filled[c] {
            filled[c] = true;
            marked[c] = acc.is_marked(s);
            delta[c] = acc
                .transitions(s)
                .iter()
                .map(|&(e, t)| (e, class[t]))
                .collect();
        }
    }
    let quotient = Generator::from_parts(acc.table(), acc.alphabet().clone(), marked, delta);
    // class of the initial state is not necessarily 0; renumber from it
    let init = class[acc.initial().expect("nonempty")];
    reroot(&quotient, init)
}

fn reroot(g: &Generator, init: usize) -> Generator {
    if init == 0 {
        return g.accessible();
    }
    let n = g.num_states();
    let swap = |s: usize| {
        if s == 0 {
            init
        } else if s == init {
            0
        } else {
            s
        }
    };
    let marked = (0..n).map(|s| g.is_marked(swap(s))).collect();
    let delta = (0..n)
        .map(|s| {
            g.transitions(swap(s))
                .iter()
                .map(|&(e, t)| (e, swap(t)))
                .collect()
        })
        .collect();
    Generator::from_parts(g.table(), g.alphabet().clone(), marked, delta).accessible()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fsm::{language_equal, EventTable};

    fn table() -> Arc<EventTable> {
        Arc::new(EventTable::from_events([("a", true), ("b", true), ("c", true)]).unwrap())
    }

    #[test]
    fn merges_shared_suffix() {
        let t = table();
        // trie for {ab, cb}: 5 states, the two b-branches are equivalent
        let g = Generator::from_words(&t, &["a", "b", "c"], &["a b", "c b"]).unwrap();
        assert_eq!(g.num_states(), 5);
        let m = minimize(&g);
        assert_eq!(m.num_states(), 3);
        let eq = language_equal(&g, &m).unwrap();
        assert!(eq.marked && eq.generated);
    }

    #[test]
    fn minimal_input_is_unchanged() {
        let t = table();
        let g =
            Generator::from_edges(&t, &["a", "b"], 2, &[0], &[(0, "a", 1), (1, "b", 0)]).unwrap();
        let m = minimize(&g);
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.transition_map(), g.transition_map());
    }

    #[test]
    fn marking_separates_states() {
        let t = table();
        // a* with only the initial state marked vs the a-successor unmarked
        let g = Generator::from_edges(&t, &["a"], 2, &[0], &[(0, "a", 1), (1, "a", 1)]).unwrap();
        assert_eq!(minimize(&g).num_states(), 2);
        let h = g.mark_all();
        assert_eq!(minimize(&h).num_states(), 1);
    }

    #[test]
    fn blocking_states_survive() {
        let t = table();
        // L = {ε, a}, Lm = {ε}; the unmarked dead end is part of L
        let g = Generator::from_edges(&t, &["a"], 2, &[0], &[(0, "a", 1)]).unwrap();
        let m = minimize(&g);
        assert_eq!(m.num_states(), 2);
    }

    #[test]
    fn all_marked_chain_is_not_collapsed() {
        let t = table();
        let g = Generator::from_words(&t, &["a"], &["", "a", "a a"]).unwrap();
        let m = minimize(&g);
        assert_eq!(m.num_states(), 3);
        assert!(!m.generates(&t.word("a a a").unwrap()));
    }

    #[test]
    fn empty_stays_empty() {
        let t = table();
        let e = Generator::empty(&t, t.all());
        assert_eq!(minimize(&e).num_states(), 0);
    }

    #[test]
    fn initial_state_is_renumbered_to_zero() {
        let t = table();
        // initial state merges with a later state
        let g = Generator::from_edges(
            &t,
            &["a", "b"],
            3,
            &[0, 2],
            &[(0, "b", 1), (1, "a", 2), (2, "b", 1)],
        )
        .unwrap();
        let m = minimize(&g);
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.initial(), Some(0));
        assert!(m.is_marked(0));
        assert!(language_equal(&g, &m).unwrap().marked);
    }
}
