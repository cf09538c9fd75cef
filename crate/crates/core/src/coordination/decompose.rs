//! Conditional independence, conditional decomposability and the
//! construction of a coordinator.

use crate::fsm::{
    compose_all, language_diff, minimize, project, EventSet, FsmError, Generator, ProjectionSpec,
    Word,
};
use crate::observer::{extend_for_observer, is_observer, is_observer_generated};
use crate::{Verdict, Witness};

use super::CoordinationError;

/// Events that belong to the alphabets of at least two generators.
pub fn shared_events(plants: &[Generator]) -> EventSet {
    let mut seen = EventSet::new();
    let mut shared = EventSet::new();
    for g in plants {
        shared.extend_from(&seen.intersection(g.alphabet()));
        seen.extend_from(g.alphabet());
    }
    shared
}

/// `E_r(G_i) ∩ E_r(G_j) ⊆ E_r(G_k)` for all `i ≠ j`. The witness is the
/// first offending event.
pub fn is_conditionally_independent(plants: &[Generator], gk: &Generator) -> Verdict {
    let ranges: Vec<EventSet> = plants.iter().map(Generator::event_range).collect();
    let rk = gk.event_range();
    let both = shared_events_of_sets(&ranges);
    let offending = both.iter().find(|&e| !rk.contains(e));
    match offending {
        None => Verdict::Holds,
        Some(e) => Verdict::Fails(Witness::Event(e)),
    }
}

fn shared_events_of_sets(sets: &[EventSet]) -> EventSet {
    let mut seen = EventSet::new();
    let mut shared = EventSet::new();
    for s in sets {
        shared.extend_from(&seen.intersection(s));
        seen.extend_from(s);
    }
    shared
}

/// Verdicts for `K` and for its prefix closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposability {
    pub marked: Verdict,
    pub closed: Verdict,
}

impl Decomposability {
    pub fn holds(&self) -> bool {
        self.marked.holds() && self.closed.holds()
    }
}

/// `K = ∥_i P_{i+k}(K)` and `K̄ = ∥_i P_{i+k}(K̄)`.
///
/// The composition always contains the language, so a witness is a word of
/// the composition outside `K` (respectively `K̄`).
pub fn is_conditionally_decomposable(
    k: &Generator,
    alphabets: &[EventSet],
    ek: &EventSet,
) -> Result<Decomposability, FsmError> {
    let parts: Vec<Generator> = alphabets.iter().map(|e| project(k, &e.union(ek))).collect();
    let composed = compose_all(&parts)?;
    let d = language_diff(&composed, k)?;
    let marked = Verdict::from_word(shortlex_min(d.marked_left_only, d.marked_right_only));
    let closed_parts: Vec<Generator> = parts.iter().map(Generator::prefix_closure).collect();
    let closed_composed = compose_all(&closed_parts)?;
    let d = language_diff(&closed_composed, &k.prefix_closure())?;
    let closed = Verdict::from_word(shortlex_min(d.generated_left_only, d.generated_right_only));
    Ok(Decomposability { marked, closed })
}

pub(crate) fn shortlex_min(a: Option<Word>, b: Option<Word>) -> Option<Word> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if (a.len(), &a) <= (b.len(), &b) { a } else { b }),
        (a, b) => a.or(b),
    }
}

/// Extends `E_k` until both `K` and `K̄` are conditionally decomposable.
///
/// Each round adds the smallest (in table order) event of the current
/// witness that is not yet in `E_k`. No minimality is claimed.
pub fn extend_alphabet_cd(
    k: &Generator,
    alphabets: &[EventSet],
    ek: &EventSet,
) -> Result<EventSet, FsmError> {
    let mut universe = k.alphabet().union(ek);
    for a in alphabets {
        universe.extend_from(a);
    }
    let mut ek = ek.clone();
    loop {
        let d = is_conditionally_decomposable(k, alphabets, &ek)?;
        let w = match (d.marked, d.closed) {
            (Verdict::Fails(Witness::Word(w)), _) | (_, Verdict::Fails(Witness::Word(w))) => w,
            _ => return Ok(ek),
        };
        let candidate = w
            .iter()
            .copied()
            .filter(|&e| !ek.contains(e))
            .min()
            .or_else(|| universe.difference(&ek).iter().next());
        match candidate {
            Some(e) => {
                ek.insert(e);
            }
            // every event is already kept; the projections are identities
            None => return Ok(ek),
        }
    }
}

/// Settings of the coordinator construction.
#[derive(Clone, Debug, Default)]
pub struct CoordinatorOptions {
    /// Events added to `E_k` on top of the shared events in step 1.
    pub initial_events: Option<EventSet>,
    /// Also extend `E_k` until `P_k` is an `L(G_i)`-observer for every `i`.
    pub observer_extension: bool,
}

/// Observer property of `P_k` restricted to one subsystem, for the marked
/// and for the generated language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObserverReport {
    pub marked: Verdict,
    pub generated: Verdict,
}

#[derive(Clone, Debug)]
pub struct CoordinatorConstruction {
    pub events: EventSet,
    pub coordinator: Generator,
    /// One entry per subsystem, for the final `E_k`.
    pub observers: Vec<ObserverReport>,
}

/// Coordinator construction: start from the shared events, extend until `K`
/// and `K̄` are conditionally decomposable, optionally extend further for
/// the observer property, and set `G_k` to the composition of the
/// projected subsystems.
pub fn build_coordinator(
    plants: &[Generator],
    spec: &Generator,
    options: &CoordinatorOptions,
) -> Result<CoordinatorConstruction, CoordinationError> {
    for g in plants {
        spec.check_table(g)?;
    }
    let alphabets: Vec<EventSet> = plants.iter().map(|g| g.alphabet().clone()).collect();
    let mut ek = shared_events(plants);
    if let Some(extra) = &options.initial_events {
        ek.extend_from(extra);
    }
    let k = spec.trim();
    loop {
        ek = extend_alphabet_cd(&k, &alphabets, &ek)?;
        if !options.observer_extension {
            break;
        }
        let before = ek.len();
        for g in plants {
            let kept = ek.intersection(g.alphabet());
            let closed = g.accessible().mark_all();
            ek.extend_from(&extend_for_observer(&closed, &ProjectionSpec::new(kept)).kept);
        }
        if ek.len() == before {
            break;
        }
    }
    let observers = plants
        .iter()
        .map(|g| {
            let p = ProjectionSpec::new(ek.intersection(g.alphabet()));
            ObserverReport {
                marked: is_observer(g, &p),
                generated: is_observer_generated(g, &p),
            }
        })
        .collect();
    let coordinator = coordinator_from_projections(plants, &ek)?;
    Ok(CoordinatorConstruction {
        events: ek,
        coordinator,
        observers,
    })
}

/// `G_k = ∥_i P_k(G_i)`, minimized, over exactly `ek`.
pub(crate) fn coordinator_from_projections(
    plants: &[Generator],
    ek: &EventSet,
) -> Result<Generator, FsmError> {
    let parts: Vec<Generator> = plants
        .iter()
        .map(|g| project(g, &ek.intersection(g.alphabet())))
        .collect();
    minimize(&compose_all(&parts)?).with_alphabet(ek.clone())
}
