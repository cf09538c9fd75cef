//! Synchronous products.

use std::collections::{HashMap, VecDeque};

use super::event::{EventId, EventSet};
use super::generator::{Generator, StateId};
use super::FsmError;

/// How a product treats an event.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Move {
    Both,
    LeftOnly,
    RightOnly,
    Blocked,
}

/// Reachable product of two generators. `mode` decides, per event, which
/// components move; `mark` combines the marking flags. Also returns the
/// component states of every product state.
pub(crate) fn product(
    left: &Generator,
    right: &Generator,
    alphabet: EventSet,
    mode: impl Fn(EventId) -> Move,
    mark: impl Fn(bool, bool) -> bool,
) -> (Generator, Vec<(StateId, StateId)>) {
    let table = left.table();
    let (Some(i1), Some(i2)) = (left.initial(), right.initial()) else {
        return (Generator::empty(table, alphabet), Vec::new());
    };
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(i1, i2)];
    index.insert((i1, i2), 0);
    let mut delta: Vec<Vec<(EventId, StateId)>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (p, q) = pairs[id];
        let mut out = Vec::new();
        let mut intern = |pair: (StateId, StateId), out: &mut Vec<(EventId, StateId)>, e| {
            let next = *index.entry(pair).or_insert_with(|| {
                pairs.push(pair);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            out.push((e, next));
        };
        let lt = left.transitions(p);
        let rt = right.transitions(q);
        // merge the two sorted transition lists
        let (mut i, mut j) = (0, 0);
        while i < lt.len() || j < rt.len() {
            let le = lt.get(i).map(|x| x.0);
            let re = rt.get(j).map(|x| x.0);
            match (le, re) {
                (Some(a), Some(b)) if a == b => {
                    match mode(a) {
                        Move::Both => intern((lt[i].1, rt[j].1), &mut out, a),
                        Move::LeftOnly => intern((lt[i].1, q), &mut out, a),
                        Move::RightOnly => intern((p, rt[j].1), &mut out, a),
                        Move::Blocked => {}
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), b) if b.is_none_or(|b| a < b) => {
                    if mode(a) == Move::LeftOnly {
                        intern((lt[i].1, q), &mut out, a);
                    }
                    i += 1;
                }
                (_, Some(b)) => {
                    if mode(b) == Move::RightOnly {
                        intern((p, rt[j].1), &mut out, b);
                    }
                    j += 1;
                }
                _ => unreachable!(),
            }
        }
        delta.push(out);
    }
    let marked = pairs
        .iter()
        .map(|&(p, q)| mark(left.is_marked(p), right.is_marked(q)))
        .collect();
    (Generator::from_parts(table, alphabet, marked, delta), pairs)
}

/// Synchronous product: shared events synchronize, private events
/// interleave. Marked states are pairs of marked states.
///
/// Only the reachable part is built; it is not trimmed, so both
/// `L(g1 ∥ g2) = L(g1) ∥ L(g2)` and `Lm(g1 ∥ g2) = Lm(g1) ∥ Lm(g2)` hold.
pub fn parallel_compose(g1: &Generator, g2: &Generator) -> Result<Generator, FsmError> {
    g1.check_table(g2)?;
    let a1 = g1.alphabet();
    let a2 = g2.alphabet();
    let alphabet = a1.union(a2);
    let (g, _) = product(
        g1,
        g2,
        alphabet,
        |e| match (a1.contains(e), a2.contains(e)) {
            (true, true) => Move::Both,
            (true, false) => Move::LeftOnly,
            (false, true) => Move::RightOnly,
            (false, false) => Move::Blocked,
        },
        |m1, m2| m1 && m2,
    );
    Ok(g)
}

/// Left-to-right synchronous product of a nonempty list.
pub fn compose_all<'a, I>(gens: I) -> Result<Generator, FsmError>
where
    I: IntoIterator<Item = &'a Generator>,
{
    let mut it = gens.into_iter();
    let first = it.next().ok_or(FsmError::NothingToCompose)?.clone();
    it.try_fold(first, |acc, g| parallel_compose(&acc, g))
}

/// Product recognizing the intersection of the two languages, regardless of
/// alphabets. Marking of the result follows `mark`.
pub(crate) fn intersect(
    g1: &Generator,
    g2: &Generator,
    mark: impl Fn(bool, bool) -> bool,
) -> (Generator, Vec<(StateId, StateId)>) {
    let alphabet = g1.alphabet().intersection(g2.alphabet());
    product(g1, g2, alphabet, |_| Move::Both, mark)
}
