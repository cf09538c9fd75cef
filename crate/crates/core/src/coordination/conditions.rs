//! Conditional controllability and conditional closedness.

use rayon::prelude::*;

use crate::fsm::{parallel_compose, project, FsmError};
use crate::supervisory::{is_controllable, is_lm_closed};
use crate::Verdict;

use super::{condition_name, CoordinationProblem};

/// Per-condition verdicts: the coordinator condition first, then one per
/// subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdicts {
    pub coordinator: Verdict,
    pub subsystems: Vec<Verdict>,
}

impl ConditionVerdicts {
    pub fn holds(&self) -> bool {
        self.coordinator.holds() && self.subsystems.iter().all(Verdict::holds)
    }

    /// Named verdicts in condition order.
    pub fn named(&self, kind: &str) -> Vec<(String, Verdict)> {
        std::iter::once(&self.coordinator)
            .chain(&self.subsystems)
            .enumerate()
            .map(|(i, v)| (condition_name(kind, i), v.clone()))
            .collect()
    }

    /// First failing condition, by name.
    pub fn first_failure(&self, kind: &str) -> Option<(String, Verdict)> {
        self.named(kind).into_iter().find(|(_, v)| !v.holds())
    }
}

/// `P_k(K)` controllable wrt `L(G_k)`, and for every `i`, `P_{i+k}(K)`
/// controllable wrt `L(G_i) ∥ closure(P_k(K))`, with the uncontrollable
/// events restricted to the respective alphabets.
pub fn is_conditionally_controllable(
    problem: &CoordinationProblem,
) -> Result<ConditionVerdicts, FsmError> {
    let k = problem.spec();
    let pk = project(k, problem.coordinator_events());
    let coordinator = is_controllable(&pk, problem.coordinator())?;
    let pk_closed = pk.prefix_closure();
    let subsystems = (0..problem.plants().len())
        .into_par_iter()
        .map(|i| {
            let local = project(k, &problem.local_alphabet(i));
            let plant = parallel_compose(&problem.plants()[i], &pk_closed)?;
            is_controllable(&local, &plant)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConditionVerdicts {
        coordinator,
        subsystems,
    })
}

/// `P_k(K)` is `Lm(G_k)`-closed, and for every `i`, `P_{i+k}(K)` is
/// `Lm(G_i) ∥ P_k(K)`-closed. Not applicable to the empty language.
pub fn is_conditionally_closed(
    problem: &CoordinationProblem,
) -> Result<ConditionVerdicts, FsmError> {
    let k = problem.spec();
    let n = problem.plants().len();
    if k.is_empty() {
        let na = Verdict::NotApplicable("the specification is empty".into());
        return Ok(ConditionVerdicts {
            coordinator: na.clone(),
            subsystems: vec![na; n],
        });
    }
    let pk = project(k, problem.coordinator_events());
    let coordinator = is_lm_closed(&pk, problem.coordinator())?;
    let subsystems = (0..n)
        .into_par_iter()
        .map(|i| {
            let local = project(k, &problem.local_alphabet(i));
            let plant = parallel_compose(&problem.plants()[i], &pk)?;
            is_lm_closed(&local, &plant)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConditionVerdicts {
        coordinator,
        subsystems,
    })
}
