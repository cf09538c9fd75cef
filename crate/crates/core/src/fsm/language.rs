//! Language-level comparisons and bounded enumeration.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};

use super::event::{EventId, Word};
use super::generator::{Generator, StateId};
use super::FsmError;

/// A finite set of words together with the length bound used to produce it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub words: BTreeSet<Word>,
    pub bound: usize,
}

impl BoundedLanguage {
    pub fn new(bound: usize) -> Self {
        BoundedLanguage {
            words: BTreeSet::new(),
            bound,
        }
    }

    pub fn contains(&self, word: &[EventId]) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Marked and generated words of length at most `bound`, by breadth-first
/// unrolling.
pub fn enumerate_bounded(g: &Generator, bound: usize) -> (BoundedLanguage, BoundedLanguage) {
    let mut marked = BoundedLanguage::new(bound);
    let mut generated = BoundedLanguage::new(bound);
    let Some(init) = g.initial() else {
        return (marked, generated);
    };
    let mut frontier: Vec<(Word, StateId)> = vec![(Vec::new(), init)];
    for depth in 0..=bound {
        let mut next = Vec::new();
        for (word, s) in frontier {
            if g.is_marked(s) {
                marked.words.insert(word.clone());
            }
            if depth < bound {
                for &(e, t) in g.transitions(s) {
                    let mut w = word.clone();
                    w.push(e);
                    next.push((w, t));
                }
            }
            generated.words.insert(word);
        }
        frontier = next;
    }
    (marked, generated)
}

/// Shortlex-least words separating two generators, one per direction and
/// language. `None` means no such word exists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LanguageDiff {
    pub generated_left_only: Option<Word>,
    pub generated_right_only: Option<Word>,
    pub marked_left_only: Option<Word>,
    pub marked_right_only: Option<Word>,
}

/// Result of [`language_equal`] / [`language_subset`]: the verdict for the
/// marked and for the generated languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LanguageRelation {
    pub marked: bool,
    pub generated: bool,
}

/// Walks the product of both generators, where either side may have fallen
/// off its automaton. Breadth-first with sorted events, so the first
/// violation of each kind is witnessed by its shortlex-least word.
pub fn language_diff(g1: &Generator, g2: &Generator) -> Result<LanguageDiff, FsmError> {
    g1.check_table(g2)?;
    let mut diff = LanguageDiff::default();
    type Pair = (Option<StateId>, Option<StateId>);
    let start: Pair = (g1.initial(), g2.initial());
    if start == (None, None) {
        return Ok(diff);
    }
    let mut parent: HashMap<Pair, Option<(Pair, EventId)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    let path = |parent: &HashMap<Pair, Option<(Pair, EventId)>>, mut p: Pair| {
        let mut w = Vec::new();
        while let Some(&Some((prev, e))) = parent.get(&p) {
            w.push(e);
            p = prev;
        }
        w.reverse();
        w
    };
    while let Some(pair) = queue.pop_front() {
        let (p, q) = pair;
        let pm = p.is_some_and(|s| g1.is_marked(s));
        let qm = q.is_some_and(|s| g2.is_marked(s));
        if p.is_some() && q.is_none() && diff.generated_left_only.is_none() {
            diff.generated_left_only = Some(path(&parent, pair));
        }
        if q.is_some() && p.is_none() && diff.generated_right_only.is_none() {
            diff.generated_right_only = Some(path(&parent, pair));
        }
        if pm && !qm && diff.marked_left_only.is_none() {
            diff.marked_left_only = Some(path(&parent, pair));
        }
        if qm && !pm && diff.marked_right_only.is_none() {
            diff.marked_right_only = Some(path(&parent, pair));
        }
        let lt = p.map_or(&[][..], |s| g1.transitions(s));
        let rt = q.map_or(&[][..], |s| g2.transitions(s));
        let mut events: Vec<EventId> = lt.iter().chain(rt).map(|&(e, _)| e).collect();
        events.sort_unstable();
        events.dedup();
        for e in events {
            let next = (
                p.and_then(|s| g1.successor(s, e)),
                q.and_then(|s| g2.successor(s, e)),
            );
            if let Entry::Vacant(slot) = parent.entry(next) {
                slot.insert(Some((pair, e)));
                queue.push_back(next);
            }
        }
    }
    Ok(diff)
}

/// Decides `Lm(g1) = Lm(g2)` and, separately, `L(g1) = L(g2)`.
pub fn language_equal(g1: &Generator, g2: &Generator) -> Result<LanguageRelation, FsmError> {
    let d = language_diff(g1, g2)?;
    Ok(LanguageRelation {
        marked: d.marked_left_only.is_none() && d.marked_right_only.is_none(),
        generated: d.generated_left_only.is_none() && d.generated_right_only.is_none(),
    })
}

/// Decides `Lm(g1) ⊆ Lm(g2)` and, separately, `L(g1) ⊆ L(g2)`.
pub fn language_subset(g1: &Generator, g2: &Generator) -> Result<LanguageRelation, FsmError> {
    let d = language_diff(g1, g2)?;
    Ok(LanguageRelation {
        marked: d.marked_left_only.is_none(),
        generated: d.generated_left_only.is_none(),
    })
}
