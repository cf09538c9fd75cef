//! Coordinator for nonblockingness.

use thiserror::Error;

use crate::coordination::shared_events;
use crate::fsm::{
    compose_all, language_diff, minimize, project, EventSet, FsmError, Generator, ProjectionSpec,
};
use crate::observer::{extend_for_observer, is_observer};
use crate::{Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NonblockingError {
    #[error(transparent)]
    Fsm(#[from] FsmError),
    #[error("at least one language is required")]
    NoLanguages,
    #[error("shared events outside the coordinator alphabet")]
    SharedEventOutside(Witness),
    #[error("projection is not an observer for language {index}")]
    ObserverPreconditionFailed { index: usize, witness: Witness },
    #[error("coordinator does not mark the composition of the projections")]
    CoordinatorMismatch(Witness),
}

/// Extends `ek` until the projection onto it is an `Lm(S_i)`-observer for
/// every given supervisor, then returns the extended set and the minimal
/// trim generator for `∥_i P_k(Lm(S_i))`.
///
/// The supervisors themselves are not recomputed for the extended set.
pub fn nonblocking_coordinator(
    supervisors: &[Generator],
    ek: &EventSet,
) -> Result<(EventSet, Generator), FsmError> {
    let mut ek = ek.clone();
    loop {
        let before = ek.len();
        for s in supervisors {
            let kept = ProjectionSpec::new(ek.intersection(s.alphabet()));
            ek.extend_from(&extend_for_observer(s, &kept).kept);
        }
        if ek.len() == before {
            break;
        }
    }
    let parts: Vec<Generator> = supervisors
        .iter()
        .map(|s| project(s, &ek.intersection(s.alphabet())))
        .collect();
    let c = minimize(&compose_all(&parts)?.trim());
    Ok((ek, c))
}

/// Checks `closure(L_1 ∥ .. ∥ L_n ∥ Lm(C)) = closure(L_1) ∥ .. ∥ closure(L_n) ∥ closure(Lm(C))`
/// by explicit composition, after checking the hypotheses under which this
/// always holds: shared events are kept by the projection, the projection
/// is an `L_i`-observer for each `i`, and `Lm(C) = ∥_i P_0(L_i)`.
pub fn verify_nonblocking(
    languages: &[Generator],
    c: &Generator,
    p: &ProjectionSpec,
) -> Result<bool, NonblockingError> {
    if languages.is_empty() {
        return Err(NonblockingError::NoLanguages);
    }
    let e0 = &p.kept;
    if let Some(e) = shared_events(languages).iter().find(|&e| !e0.contains(e)) {
        return Err(NonblockingError::SharedEventOutside(Witness::Event(e)));
    }
    for (index, l) in languages.iter().enumerate() {
        let kept = ProjectionSpec::new(e0.intersection(l.alphabet()));
        if let Verdict::Fails(witness) = is_observer(l, &kept) {
            return Err(NonblockingError::ObserverPreconditionFailed { index, witness });
        }
    }
    let parts: Vec<Generator> = languages
        .iter()
        .map(|l| project(l, &e0.intersection(l.alphabet())))
        .collect();
    let projected = compose_all(&parts)?;
    let d = language_diff(c, &projected)?;
    if let Some(w) = d.marked_left_only.or(d.marked_right_only) {
        return Err(NonblockingError::CoordinatorMismatch(Witness::Word(w)));
    }
    let all: Vec<&Generator> = languages.iter().chain(std::iter::once(c)).collect();
    let lhs = compose_all(all.iter().copied())?.trim();
    let trimmed: Vec<Generator> = all.iter().map(|g| g.trim()).collect();
    let rhs = compose_all(&trimmed)?;
    let d = language_diff(&lhs, &rhs)?;
    Ok(d.generated_left_only.is_none() && d.generated_right_only.is_none())
}
