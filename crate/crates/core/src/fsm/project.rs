//! Natural projection: erase events, then determinize.

use std::collections::{HashMap, VecDeque};

use super::event::{EventId, EventSet};
use super::generator::{Generator, StateId};
use super::minimize::minimize;

/// Event subset kept by a natural projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    pub kept: EventSet,
}

impl ProjectionSpec {
    pub fn new(kept: EventSet) -> Self {
        ProjectionSpec { kept }
    }
}

/// Deterministic generator for `P(Lm(g))` and `P(L(g))`, minimized.
///
/// The result is over `kept`; kept events that `g` never uses simply have no
/// transitions.
pub fn project(g: &Generator, kept: &EventSet) -> Generator {
    minimize(&determinize_projection(g, kept).0)
}

/// Subset construction over the erased events. Returns the (unminimized)
/// deterministic generator together with the subset of `g` states behind
/// each of its states.
pub(crate) fn determinize_projection(
    g: &Generator,
    kept: &EventSet,
) -> (Generator, Vec<Vec<StateId>>) {
    let table = g.table();
    let Some(init) = g.initial() else {
        return (Generator::empty(table, kept.clone()), Vec::new());
    };
    let silent = SilentClosure::new(g, kept);
    let start = silent.close(std::iter::once(init));
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut subsets = vec![start];
    let mut delta = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let mut by_event: Vec<(EventId, StateId)> = subsets[id]
            .iter()
            .flat_map(|&s| g.transitions(s).iter().copied())
            .filter(|&(e, _)| kept.contains(e))
            .collect();
        by_event.sort_unstable();
        let mut out = Vec::new();
        let mut i = 0;
        while i < by_event.len() {
            let e = by_event[i].0;
            let mut j = i;
            while j < by_event.len() && by_event[j].0 == e {
                j += 1;
            }
            let target = silent.close(by_event[i..j].iter().map(|&(_, t)| t));
            let next = match index.get(&target) {
                Some(&n) => n,
                None => {
                    let n = subsets.len();
                    index.insert(target.clone(), n);
                    subsets.push(target);
                    queue.push_back(n);
                    n
                }
            };
            out.push((e, next));
            i = j;
        }
        delta.push(out);
    }
    let marked = subsets
        .iter()
        .map(|set| set.iter().any(|&s| g.is_marked(s)))
        .collect();
    (
        Generator::from_parts(table, kept.clone(), marked, delta),
        subsets,
    )
}

/// Reachability through erased (silent) transitions.
pub(crate) struct SilentClosure<'a> {
    g: &'a Generator,
    kept: &'a EventSet,
}

impl<'a> SilentClosure<'a> {
    pub(crate) fn new(g: &'a Generator, kept: &'a EventSet) -> Self {
        SilentClosure { g, kept }
    }

    /// Sorted set of states silently reachable from `from`.
    pub(crate) fn close(&self, from: impl Iterator<Item = StateId>) -> Vec<StateId> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack: Vec<StateId> = Vec::new();
        for s in from {
            if seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &(e, t) in self.g.transitions(s) {
                if !self.kept.contains(e) && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// For every state, whether it reaches a state satisfying `target` using
/// only transitions accepted by `via`. Linear in the size of `g`.
pub(crate) fn backward_reach(
    g: &Generator,
    target: impl Fn(StateId) -> bool,
    via: impl Fn(EventId) -> bool,
) -> Vec<bool> {
    let n = g.num_states();
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for s in 0..n {
        for &(e, t) in g.transitions(s) {
            if via(e) {
                rev[t].push(s);
            }
        }
    }
    let mut seen: Vec<bool> = (0..n).map(&target).collect();
    let mut stack: Vec<StateId> = (0..n).filter(|&s| seen[s]).collect();
    while let Some(s) = stack.pop() {
        for &p in &rev[s] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Shortest silent path from `from` to a state satisfying `target`, using
/// only transitions accepted by `via`.
pub(crate) fn shortest_path(
    g: &Generator,
    from: StateId,
    target: impl Fn(StateId) -> bool,
    via: impl Fn(EventId) -> bool,
) -> Option<Vec<EventId>> {
    let mut parent: Vec<Option<(StateId, EventId)>> = vec![None; g.num_states()];
    let mut seen = vec![false; g.num_states()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if target(s) {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some((p, e)) = parent[cur] {
                word.push(e);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for &(e, t) in g.transitions(s) {
            if via(e) && !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, e));
                queue.push_back(t);
            }
        }
    }
    None
}
