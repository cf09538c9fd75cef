//! Monolithic supervisory control: controllability, supremal controllable
//! sublanguage, and `Lm(G)`-closedness.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::fsm::{
    intersect, language_diff, minimize, EventId, EventSet, FsmError, Generator, StateId,
};
use crate::{Verdict, Witness};

/// Controllability of `K` (marked language of `k`) with respect to `L(l)`
/// and the uncontrollable events of the table: `K̄·Eu ∩ L ⊆ K̄`.
///
/// On failure the witness `(s, u)` is the shortlex-least `s` and, for that
/// `s`, the first `u` in table order.
pub fn is_controllable(k: &Generator, l: &Generator) -> Result<Verdict, FsmError> {
    let eu = k.table().uncontrollable();
    is_controllable_wrt(k, l, &eu)
}

/// Same as [`is_controllable`] with an explicit uncontrollable set.
pub fn is_controllable_wrt(
    k: &Generator,
    l: &Generator,
    uncontrollable: &EventSet,
) -> Result<Verdict, FsmError> {
    k.check_table(l)?;
    let spec = k.trim();
    let (Some(i1), Some(i2)) = (spec.initial(), l.initial()) else {
        return Ok(Verdict::Holds);
    };
    type Pair = (StateId, StateId);
    let mut parent: HashMap<Pair, Option<(Pair, EventId)>> = HashMap::new();
    parent.insert((i1, i2), None);
    let mut queue = VecDeque::from([(i1, i2)]);
    while let Some((p, q)) = queue.pop_front() {
        for u in uncontrollable.iter() {
            if l.successor(q, u).is_some() && spec.successor(p, u).is_none() {
                let mut prefix = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, e))) = parent.get(&cur) {
                    prefix.push(*e);
                    cur = *prev;
                }
                prefix.reverse();
                return Ok(Verdict::Fails(Witness::Controllability {
                    prefix,
                    event: u,
                }));
            }
        }
        for &(e, p2) in spec.transitions(p) {
            if let Some(q2) = l.successor(q, e) {
                if let Entry::Vacant(slot) = parent.entry((p2, q2)) {
                    slot.insert(Some(((p, q), e)));
                    queue.push_back((p2, q2));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Supremal controllable sublanguage of `Lm(k) ∩ L(l)` with respect to
/// `L(l)` and the table's uncontrollable events.
pub fn supcon(k: &Generator, l: &Generator) -> Result<Generator, FsmError> {
    let eu = k.table().uncontrollable();
    supcon_wrt(k, l, &eu)
}

/// Fixpoint on the product of the trimmed specification with the plant:
/// delete every product state where the plant can execute an uncontrollable
/// event the specification cannot follow (or whose follower was deleted),
/// then drop states that can no longer reach a marked state. Repeat until
/// nothing changes. The result is minimized.
pub fn supcon_wrt(
    k: &Generator,
    l: &Generator,
    uncontrollable: &EventSet,
) -> Result<Generator, FsmError> {
    k.check_table(l)?;
    let spec = k.trim();
    let (prod, pairs) = intersect(&spec, l, |mk, _| mk);
    let prod = prod.with_alphabet(spec.alphabet().clone())?;
    let n = prod.num_states();
    if n == 0 {
        return Ok(Generator::empty(k.table(), spec.alphabet().clone()));
    }
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let (_, q) = pairs[x];
            let bad = uncontrollable.iter().any(|u| {
                l.successor(q, u).is_some() && prod.successor(x, u).is_none_or(|y| !alive[y])
            });
            if bad {
                alive[x] = false;
                changed = true;
            }
        }
        // co-reachability within the surviving states
        let mut co = vec![false; n];
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for x in (0..n).filter(|&x| alive[x]) {
            for &(_, y) in prod.transitions(x) {
                if alive[y] {
                    rev[y].push(x);
                }
            }
        }
        let mut stack: Vec<StateId> = (0..n).filter(|&x| alive[x] && prod.is_marked(x)).collect();
        for &x in &stack {
            co[x] = true;
        }
        while let Some(x) = stack.pop() {
            for &p in &rev[x] {
                if !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        for x in 0..n {
            if alive[x] && !co[x] {
                alive[x] = false;
                changed = true;
            }
        }
        if !alive[0] {
            return Ok(Generator::empty(k.table(), spec.alphabet().clone()));
        }
        if !changed {
            break;
        }
    }
    Ok(minimize(&prod.restrict(&alive)))
}

/// `K = K̄ ∩ Lm(G)` where `K = Lm(k)`.
///
/// A failure witness is a word on which the two sides differ: either in
/// `K̄ ∩ Lm(G)` but not in `K`, or in `K` but not in `Lm(G)`.
pub fn is_lm_closed(k: &Generator, g: &Generator) -> Result<Verdict, FsmError> {
    k.check_table(g)?;
    let closure = k.prefix_closure();
    let (meet, _) = intersect(&closure, g, |_, mg| mg);
    let d = language_diff(&meet, k)?;
    let w = match (d.marked_left_only, d.marked_right_only) {
        (None, None) => None,
        (Some(a), None) | (None, Some(a)) => Some(a),
        (Some(a), Some(b)) => Some(std::cmp::min_by(a, b, |x, y| {
            x.len().cmp(&y.len()).then_with(|| x.cmp(y))
        })),
    };
    Ok(Verdict::from_word(w))
}
