//! Brute-force reference semantics on explicit word sets.
//!
//! Nothing here runs on automata beyond the initial enumeration of words, so
//! agreement with the automaton algorithms is independent evidence.

pub mod harness;
pub mod random;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::coordination::CoordinationProblem;
use crate::fsm::{
    enumerate_bounded, project_word, BoundedLanguage, EventId, EventSet, EventTable, Generator,
    ProjectionSpec, Word,
};

/// Largest specification accepted by [`oracle_supcc`].
pub const MAX_SUPCC_WORDS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large: {words} words, at most {limit} supported")]
    InstanceTooLarge { words: usize, limit: usize },
    #[error("the marked language is infinite")]
    NotAcyclic,
    #[error("bound {bound} does not exceed the longest specification word")]
    BoundTooSmall { bound: usize },
}

fn append(word: &[EventId], e: EventId) -> Word {
    let mut w = word.to_vec();
    w.push(e);
    w
}

/// All prefixes of the given words.
pub fn prefixes<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in words {
        for n in 0..=w.len() {
            out.insert(w[..n].to_vec());
        }
    }
    out
}

/// Image of a word set under the projection onto `kept`.
pub fn project_words<'a>(
    words: impl IntoIterator<Item = &'a Word>,
    kept: &EventSet,
) -> BTreeSet<Word> {
    words.into_iter().map(|w| project_word(w, kept)).collect()
}

/// `closure · eu ∩ plant ⊆ closure`, where `closure` is prefix-closed.
fn controllable_closure(
    closure: &BTreeSet<Word>,
    eu: &EventSet,
    in_plant: impl Fn(&[EventId]) -> bool,
) -> bool {
    closure.iter().all(|s| {
        eu.iter().all(|u| {
            let su = append(s, u);
            !in_plant(&su) || closure.contains(&su)
        })
    })
}

/// Supremal controllable sublanguage of `K ∩ L` with respect to the
/// prefix-closed `L` and `eu`.
///
/// Removes every word of `K` having a prefix `s` with `su ∈ L \ closure`
/// for some uncontrollable `u`, until nothing changes. Words of `L` longer
/// than `l.bound` are treated as absent, so `l.bound` must exceed the
/// longest word of `k`.
pub fn oracle_supcon(k: &BoundedLanguage, l: &BoundedLanguage, eu: &EventSet) -> BoundedLanguage {
    let mut m: BTreeSet<Word> = k.words.intersection(&l.words).cloned().collect();
    loop {
        let closure = prefixes(&m);
        let bad: Vec<&Word> = closure
            .iter()
            .filter(|s| {
                eu.iter().any(|u| {
                    let su = append(s, u);
                    l.contains(&su) && !closure.contains(&su)
                })
            })
            .collect();
        if bad.is_empty() {
            return BoundedLanguage {
                words: m,
                bound: k.bound,
            };
        }
        let before = m.len();
        m.retain(|w| !bad.iter().any(|s| w.starts_with(s)));
        debug_assert!(m.len() < before);
    }
}

/// Coordination setting as finite word sets: the specification, and the
/// generated languages of the subsystems and of the coordinator up to
/// `bound`. Generated languages are prefix-closed by construction.
#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub table: Arc<EventTable>,
    pub alphabets: Vec<EventSet>,
    pub coordinator_events: EventSet,
    pub spec: BoundedLanguage,
    pub plants: Vec<BoundedLanguage>,
    pub coordinator: BoundedLanguage,
    pub bound: usize,
}

impl OracleInstance {
    /// Enumerates all languages of `problem` up to `bound`, which must
    /// exceed the longest word of the (finite) specification.
    pub fn from_problem(problem: &CoordinationProblem, bound: usize) -> Result<Self, OracleError> {
        let spec = problem.spec();
        if !spec.is_empty() && has_cycle(spec) {
            return Err(OracleError::NotAcyclic);
        }
        let (k, _) = enumerate_bounded(spec, bound);
        if k.words.iter().any(|w| w.len() >= bound) {
            return Err(OracleError::BoundTooSmall { bound });
        }
        Ok(OracleInstance {
            table: problem.table().clone(),
            alphabets: problem.alphabets(),
            coordinator_events: problem.coordinator_events().clone(),
            spec: k,
            plants: problem
                .plants()
                .iter()
                .map(|g| enumerate_bounded(g, bound).1)
                .collect(),
            coordinator: enumerate_bounded(problem.coordinator(), bound).1,
            bound,
        })
    }

    /// Conditional controllability of `m ⊆ K`, straight from the definition.
    pub fn is_conditionally_controllable(&self, m: &BTreeSet<Word>) -> bool {
        let eu = self.table.uncontrollable();
        let ek = &self.coordinator_events;
        let pk = prefixes(&project_words(m, ek));
        if !controllable_closure(&pk, &eu.intersection(ek), |w| self.coordinator.contains(w)) {
            return false;
        }
        self.alphabets.iter().zip(&self.plants).all(|(ei, li)| {
            let eik = ei.union(ek);
            let local = prefixes(&project_words(m, &eik));
            controllable_closure(&local, &eu.intersection(&eik), |w| {
                li.contains(&project_word(w, ei)) && pk.contains(&project_word(w, ek))
            })
        })
    }
}

/// Union of all conditionally controllable subsets of `K`, by enumerating
/// every subset.
pub fn oracle_supcc(instance: &OracleInstance) -> Result<BoundedLanguage, OracleError> {
    let words: Vec<&Word> = instance.spec.words.iter().collect();
    if words.len() > MAX_SUPCC_WORDS {
        return Err(OracleError::InstanceTooLarge {
            words: words.len(),
            limit: MAX_SUPCC_WORDS,
        });
    }
    let mut union = BTreeSet::new();
    for mask in 0u32..(1 << words.len()) {
        let m: BTreeSet<Word> = words
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| (*w).clone())
            .collect();
        if m.is_subset(&union) {
            continue;
        }
        if instance.is_conditionally_controllable(&m) {
            union.extend(m);
        }
    }
    Ok(BoundedLanguage {
        words: union,
        bound: instance.bound,
    })
}

/// Observer property of the projection for `Lm(g)` by direct enumeration:
/// for every `s` in the closure and every `t ∈ P(Lm)` extending `P(s)`
/// there is `su ∈ Lm` with `P(su) = t`.
pub fn oracle_check_observer_acyclic(
    g: &Generator,
    p: &ProjectionSpec,
) -> Result<bool, OracleError> {
    let g = g.trim();
    if has_cycle(&g) {
        return Err(OracleError::NotAcyclic);
    }
    let (lm, _) = enumerate_bounded(&g, g.num_states());
    let closure = prefixes(&lm.words);
    let targets = project_words(&lm.words, &p.kept);
    Ok(closure.iter().all(|s| {
        let ps = project_word(s, &p.kept);
        targets.iter().filter(|t| t.starts_with(&ps)).all(|t| {
            lm.words
                .iter()
                .any(|w| w.starts_with(s) && project_word(w, &p.kept) == *t)
        })
    }))
}

/// A cycle among the accessible states.
fn has_cycle(g: &Generator) -> bool {
    let n = g.num_states();
    let Some(init) = g.initial() else {
        return false;
    };
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    let mut stack = vec![(init, 0usize)];
    color[init] = 1;
    while let Some(top) = stack.last_mut() {
        let (s, next) = *top;
        match g.transitions(s).get(next) {
            Some(&(_, t)) => {
                top.1 += 1;
                match color[t] {
                    1 => return true,
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    _ => {}
                }
            }
            None => {
                color[s] = 2;
                stack.pop();
            }
        }
    }
    false
}
