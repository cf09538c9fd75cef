//! End-to-end coordination pipeline: coordinator construction, the supremal
//! triplet, the inclusion test, the resulting supervisors, and the
//! coordinator for nonblockingness.

use crate::fsm::{compose_all, language_diff, EventSet, Generator, ProjectionSpec};
use crate::nonblocking::{nonblocking_coordinator, verify_nonblocking};
use crate::supervisory::supcon;
use crate::Verdict;

use super::conditions::{is_conditionally_closed, is_conditionally_controllable};
use super::decompose::{
    build_coordinator, is_conditionally_decomposable, is_conditionally_independent, shortlex_min,
    CoordinatorOptions, ObserverReport,
};
use super::synthesis::{prefix_closed_supcc, supc_triplet, verify_optimality, SupCTriplet};
use super::{CoordinationError, CoordinationProblem};

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// Fixed coordinator events. Without them the coordinator construction
    /// starts from the shared events.
    pub coordinator_events: Option<EventSet>,
    /// Fixed coordinator; requires `coordinator_events`.
    pub coordinator: Option<Generator>,
    /// Extend the coordinator events for the observer property.
    pub observer_extension: bool,
    /// Use the prefix-closed procedure instead of the inclusion test.
    pub prefix_closed: bool,
    /// Compare the result with the monolithic supremal controllable
    /// sublanguage (builds the global plant).
    pub compare_monolithic: bool,
}

#[derive(Clone, Debug)]
pub struct NonblockingStage {
    pub events: EventSet,
    pub coordinator: Generator,
    /// Outcome of the nonblocking check, or why it could not be run.
    pub nonblocking: Result<bool, String>,
    /// Adding the coordinator does not change the closure of the composed
    /// supervisors.
    pub closure_unchanged: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub coordinator_events: EventSet,
    pub coordinator: Generator,
    /// Observer property of `P_k` per subsystem (marked, generated).
    pub observers: Vec<ObserverReport>,
    pub verdicts: Vec<(String, Verdict)>,
    pub triplet: SupCTriplet,
    /// `supC_k ⊆ P_k(supC_{i+k})` per subsystem.
    pub inclusion: Vec<Verdict>,
    /// Supremal conditionally controllable sublanguage, when a sufficient
    /// condition for computing it holds.
    pub supcc: Option<Generator>,
    pub nonblocking: Option<NonblockingStage>,
}

impl PipelineReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.holds())
    }
}

pub fn run(
    plants: Vec<Generator>,
    spec: &Generator,
    options: &PipelineOptions,
) -> Result<PipelineReport, CoordinationError> {
    let (ek, gk, observers) = match (&options.coordinator_events, options.observer_extension) {
        (Some(ek), false) => {
            let problem = CoordinationProblem::new(
                plants.clone(),
                spec,
                ek.clone(),
                options.coordinator.clone(),
            )?;
            let observers = plants
                .iter()
                .map(|g| {
                    let p = ProjectionSpec::new(ek.intersection(g.alphabet()));
                    ObserverReport {
                        marked: crate::observer::is_observer(g, &p),
                        generated: crate::observer::is_observer_generated(g, &p),
                    }
                })
                .collect();
            (ek.clone(), problem.coordinator().clone(), observers)
        }
        (initial, observer_extension) => {
            let c = build_coordinator(
                &plants,
                spec,
                &CoordinatorOptions {
                    initial_events: initial.clone(),
                    observer_extension,
                },
            )?;
            (c.events, c.coordinator, c.observers)
        }
    };
    let problem = CoordinationProblem::new(plants, spec, ek.clone(), Some(gk.clone()))?;
    let k = problem.spec();
    let mut verdicts = Vec::new();
    verdicts.push((
        "conditional independence".to_string(),
        is_conditionally_independent(problem.plants(), problem.coordinator()),
    ));
    let d = is_conditionally_decomposable(k, &problem.alphabets(), &ek)?;
    verdicts.push(("decomposability of the specification".into(), d.marked));
    verdicts.push(("decomposability of its closure".into(), d.closed));

    let triplet = supc_triplet(&problem)?;
    let inclusion = triplet.inclusion(&ek);
    let supcc = if options.prefix_closed {
        match prefix_closed_supcc(&problem) {
            Ok(g) => {
                verdicts.push(("prefix-closed hypotheses".into(), Verdict::Holds));
                Some(g)
            }
            Err(e) => {
                let v = match e.witness() {
                    Some(w) => Verdict::Fails(w.clone()),
                    None => Verdict::NotApplicable(e.to_string()),
                };
                verdicts.push((format!("prefix-closed hypotheses: {e}"), v));
                None
            }
        }
    } else {
        for (i, v) in inclusion.iter().enumerate() {
            verdicts.push((format!("inclusion for subsystem {}", i + 1), v.clone()));
        }
        inclusion
            .iter()
            .all(Verdict::holds)
            .then(|| compose_all(&triplet.supc_local).map(|g| crate::fsm::minimize(&g)))
            .transpose()?
    };

    let mut nonblocking = None;
    if let Some(result) = &supcc {
        let result_problem = problem.with_spec(result)?;
        let cc = is_conditionally_controllable(&result_problem)?;
        verdicts.extend(cc.named("result controllability"));
        if !result.is_empty() {
            let cl = is_conditionally_closed(&result_problem)?;
            verdicts.extend(cl.named("result closedness"));
        }
        if options.compare_monolithic {
            let plant = problem.global_plant()?;
            let mono = supcon(k, &plant)?;
            let d = language_diff(result, &mono)?;
            let v = Verdict::from_word(shortlex_min(d.marked_left_only, d.marked_right_only));
            verdicts.push(("equals the monolithic supremal language".into(), v));
            if options.prefix_closed {
                let v = verify_optimality(&problem, result)?;
                verdicts.push(("optimality under the additional hypotheses".into(), v));
            }
        }
        let (events, c) = nonblocking_coordinator(&triplet.supc_local, &ek)?;
        let check = verify_nonblocking(
            &triplet.supc_local,
            &c,
            &ProjectionSpec::new(events.clone()),
        )
        .map_err(|e| e.to_string());
        let without = compose_all(&triplet.supc_local)?.prefix_closure();
        let with =
            compose_all(triplet.supc_local.iter().chain(std::iter::once(&c)))?.prefix_closure();
        let d = language_diff(&with, &without)?;
        nonblocking = Some(NonblockingStage {
            events,
            coordinator: c,
            nonblocking: check,
            closure_unchanged: d.marked_left_only.is_none() && d.marked_right_only.is_none(),
        });
    }

    Ok(PipelineReport {
        coordinator_events: ek,
        coordinator: gk,
        observers,
        verdicts,
        triplet,
        inclusion,
        supcc,
        nonblocking,
    })
}
