//! Observer property and local control consistency of natural projections.

use std::collections::VecDeque;

use crate::fsm::{
    backward_reach, shortest_path, EventId, EventSet, Generator, ProjectionSpec, StateId, Word,
};
use crate::{Verdict, Witness};

/// Decides whether the projection onto `p.kept` is an `Lm(g)`-observer.
///
/// Works on pairs `(x, y)` of states of the trimmed generator reached by two
/// words with equal projections. Erased events move one side at a time,
/// kept events move both. The property holds iff at every reachable pair,
/// each kept event enabled at `y` is silently reachable from `x`, and if `y`
/// is marked then a marked state is silently reachable from `x`. Quadratic
/// in the number of states.
pub fn is_observer(g: &Generator, p: &ProjectionSpec) -> Verdict {
    match find_violation(g, &p.kept) {
        None => Verdict::Holds,
        Some(v) => Verdict::Fails(Witness::Observer {
            prefix: v.prefix,
            target: v.target,
        }),
    }
}

/// Observer check for the generated language `L(g)`.
pub fn is_observer_generated(g: &Generator, p: &ProjectionSpec) -> Verdict {
    is_observer(&g.accessible().mark_all(), p)
}

/// Smallest-effort extension of `p.kept` that makes the projection an
/// `Lm(g)`-observer. Each round adds the first erased event on the
/// counterpart word of the current witness.
pub fn extend_for_observer(g: &Generator, p: &ProjectionSpec) -> ProjectionSpec {
    let mut kept = p.kept.clone();
    while let Some(v) = find_violation(g, &kept) {
        let culprit = v
            .other
            .iter()
            .chain(&v.prefix)
            .copied()
            .find(|&e| !kept.contains(e))
            .expect("a violation always involves an erased event");
        kept.insert(culprit);
    }
    ProjectionSpec::new(kept)
}

/// Decides local control consistency of the projection for the generated
/// language `L(g)`.
///
/// For each kept uncontrollable event `σ`, one backward reachability over
/// all erased events and one over erased uncontrollable events. A reachable
/// state that reaches `σ` only through some controllable erased event is a
/// violation.
pub fn is_lcc(g: &Generator, p: &ProjectionSpec) -> Verdict {
    let g = g.accessible();
    let Some(init) = g.initial() else {
        return Verdict::Holds;
    };
    let table = g.table().clone();
    let kept = &p.kept;
    let erased = |e: EventId| !kept.contains(e);
    let erased_unc = |e: EventId| !kept.contains(e) && !table.is_controllable(e);
    let order = bfs_order(&g, init);
    for sigma in g.alphabet().iter() {
        if !kept.contains(sigma) || table.is_controllable(sigma) {
            continue;
        }
        let enabled = |s: StateId| g.successor(s, sigma).is_some();
        let any = backward_reach(&g, enabled, erased);
        let unc = backward_reach(&g, enabled, erased_unc);
        if let Some(&(x, _)) = order.iter().find(|&&(x, _)| any[x] && !unc[x]) {
            let prefix = path_to(&order, x);
            let silent = shortest_path(&g, x, enabled, erased).expect("reachable by construction");
            return Verdict::Fails(Witness::Lcc {
                prefix,
                silent,
                event: sigma,
            });
        }
    }
    Verdict::Holds
}

/// Breadth-first visiting order with parent links, for witness words.
fn bfs_order(g: &Generator, init: StateId) -> Vec<(StateId, Option<(usize, EventId)>)> {
    let mut seen = vec![false; g.num_states()];
    seen[init] = true;
    let mut order = vec![(init, None)];
    let mut i = 0;
    while i < order.len() {
        let (s, _) = order[i];
        for &(e, t) in g.transitions(s) {
            if !seen[t] {
                seen[t] = true;
                order.push((t, Some((i, e))));
            }
        }
        i += 1;
    }
    order
}

fn path_to(order: &[(StateId, Option<(usize, EventId)>)], state: StateId) -> Word {
    let mut idx = order
        .iter()
        .position(|&(s, _)| s == state)
        .expect("visited");
    let mut w = Vec::new();
    while let Some((p, e)) = order[idx].1 {
        w.push(e);
        idx = p;
    }
    w.reverse();
    w
}

struct Violation {
    /// Word of the stuck side.
    prefix: Word,
    /// Projected word the stuck side cannot complete to.
    target: Word,
    /// The witness-side word (with same projection as `prefix`) followed by
    /// its continuation.
    other: Word,
}

#[derive(Clone, Copy)]
enum Step {
    Left(EventId),
    Right(EventId),
    Both(EventId),
}

fn find_violation(g: &Generator, kept: &EventSet) -> Option<Violation> {
    let g = g.trim();
    let init = g.initial()?;
    let n = g.num_states();
    let erased = |e: EventId| !kept.contains(e);
    let reach_marked = backward_reach(&g, |s| g.is_marked(s), erased);
    let used: Vec<EventId> = g.alphabet().iter().filter(|&e| kept.contains(e)).collect();
    let reach_event: Vec<Vec<bool>> = used
        .iter()
        .map(|&e| backward_reach(&g, |s| g.successor(s, e).is_some(), erased))
        .collect();
    let slot = |e: EventId| used.binary_search(&e).expect("kept event of the alphabet");

    let key = |x: StateId, y: StateId| x * n + y;
    let mut parent: Vec<Option<(usize, Step)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    seen[key(init, init)] = true;
    let mut queue = VecDeque::from([(init, init)]);
    while let Some((x, y)) = queue.pop_front() {
        let failing = if g.is_marked(y) && !reach_marked[x] {
            Some(None)
        } else {
            g.transitions(y)
                .iter()
                .find(|&&(e, _)| kept.contains(e) && !reach_event[slot(e)][x])
                .map(|&(e, t)| Some((e, t)))
        };
        if let Some(fail) = failing {
            let (left, right) = unwind(&parent, key(x, y));
            let mut other = right;
            if let Some((e, t)) = fail {
                other.push(e);
                other.extend(g.shortest_completion(t).expect("trim"));
            }
            let target = other
                .iter()
                .copied()
                .filter(|&e| kept.contains(e))
                .collect();
            return Some(Violation {
                prefix: left,
                target,
                other,
            });
        }
        let mut visit = |a: StateId, b: StateId, step: Step, queue: &mut VecDeque<_>| {
            let k = key(a, b);
            if !seen[k] {
                seen[k] = true;
                parent[k] = Some((key(x, y), step));
                queue.push_back((a, b));
            }
        };
        for &(e, x2) in g.transitions(x) {
            if erased(e) {
                visit(x2, y, Step::Left(e), &mut queue);
            } else if let Some(y2) = g.successor(y, e) {
                visit(x2, y2, Step::Both(e), &mut queue);
            }
        }
        for &(e, y2) in g.transitions(y) {
            if erased(e) {
                visit(x, y2, Step::Right(e), &mut queue);
            }
        }
    }
    None
}

fn unwind(parent: &[Option<(usize, Step)>], mut k: usize) -> (Word, Word) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while let Some((p, step)) = parent[k] {
        match step {
            Step::Left(e) => left.push(e),
            Step::Right(e) => right.push(e),
            Step::Both(e) => {
                left.push(e);
                right.push(e);
            }
        }
        k = p;
    }
    left.reverse();
    right.reverse();
    (left, right)
}
