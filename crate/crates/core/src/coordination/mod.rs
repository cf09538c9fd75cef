//! Coordination control of systems composed of several subsystems and a
//! coordinator.
//!
//! A [`CoordinationProblem`] holds the subsystem generators `G_1 .. G_n`,
//! the specification `K`, the coordinator event set `E_k` and the
//! coordinator `G_k`. Subsystem `i` together with the coordinator lives on
//! `E_i ∪ E_k`; projections onto that set are written `P_{i+k}`.

mod conditions;
pub(crate) mod decompose;
mod pipeline;
mod synthesis;

use std::sync::Arc;

use thiserror::Error;

use crate::fsm::{compose_all, EventSet, EventTable, FsmError, Generator};
use crate::Witness;

pub use conditions::{is_conditionally_closed, is_conditionally_controllable, ConditionVerdicts};
pub use decompose::{
    build_coordinator, extend_alphabet_cd, is_conditionally_decomposable,
    is_conditionally_independent, shared_events, CoordinatorConstruction, CoordinatorOptions,
    Decomposability, ObserverReport,
};
pub use pipeline::{run, NonblockingStage, PipelineOptions, PipelineReport};
pub use synthesis::{
    check_projection_within_supck, check_supck_inclusion, prefix_closed_supcc, supc_triplet,
    supcc_via_inclusion, synthesize_supervisors, verify_optimality, SupCTriplet, Supervisors,
    SynthesisReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordinationError {
    #[error(transparent)]
    Fsm(#[from] FsmError),
    #[error("at least two subsystems are required, got {0}")]
    TooFewPlants(usize),
    #[error("events {0} are shared by several subsystems but not in the coordinator alphabet")]
    SharedEventsOutsideCoordinator(String),
    #[error("specification uses events {0} outside the subsystem and coordinator alphabets")]
    SpecAlphabet(String),
    #[error("coordinator alphabet {found} differs from the coordinator events {expected}")]
    CoordinatorAlphabet { expected: String, found: String },
    #[error("specification is not included in the marked plant language (subsystem {subsystem}, word {word})")]
    SpecNotInPlant { subsystem: usize, word: String },
    #[error("condition failed: {condition}")]
    ConditionFailed {
        condition: String,
        witness: Option<Witness>,
    },
    #[error("precondition failed: {condition}")]
    PreconditionFailed {
        condition: String,
        witness: Option<Witness>,
    },
}

impl CoordinationError {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CoordinationError::ConditionFailed { witness, .. }
            | CoordinationError::PreconditionFailed { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

/// Subsystems, specification and coordinator over one event table.
#[derive(Clone, Debug)]
pub struct CoordinationProblem {
    plants: Vec<Generator>,
    spec: Generator,
    coordinator_events: EventSet,
    coordinator: Generator,
}

impl CoordinationProblem {
    /// Validates the inputs. Without an explicit coordinator, `G_k` is the
    /// minimized composition of the projections `P_k(G_i)`.
    ///
    /// The specification is trimmed and re-read over the global alphabet;
    /// its marked language is unchanged.
    pub fn new(
        plants: Vec<Generator>,
        spec: &Generator,
        coordinator_events: EventSet,
        coordinator: Option<Generator>,
    ) -> Result<Self, CoordinationError> {
        if plants.len() < 2 {
            return Err(CoordinationError::TooFewPlants(plants.len()));
        }
        for g in &plants {
            spec.check_table(g)?;
        }
        let table = spec.table().clone();
        let shared = shared_events(&plants);
        let missing = shared.difference(&coordinator_events);
        if !missing.is_empty() {
            return Err(CoordinationError::SharedEventsOutsideCoordinator(
                table.format_set(&missing),
            ));
        }
        let mut universe = coordinator_events.clone();
        for g in &plants {
            universe.extend_from(g.alphabet());
        }
        let outside = spec.alphabet().difference(&universe);
        if !outside.is_empty() {
            return Err(CoordinationError::SpecAlphabet(table.format_set(&outside)));
        }
        let coordinator = match coordinator {
            Some(gk) => {
                spec.check_table(&gk)?;
                if gk.alphabet() != &coordinator_events {
                    return Err(CoordinationError::CoordinatorAlphabet {
                        expected: table.format_set(&coordinator_events),
                        found: table.format_set(gk.alphabet()),
                    });
                }
                gk
            }
            None => decompose::coordinator_from_projections(&plants, &coordinator_events)?,
        };
        let spec = spec.trim().with_alphabet(universe)?;
        Ok(CoordinationProblem {
            plants,
            spec,
            coordinator_events,
            coordinator,
        })
    }

    pub fn table(&self) -> &Arc<EventTable> {
        self.spec.table()
    }

    pub fn plants(&self) -> &[Generator] {
        &self.plants
    }

    pub fn spec(&self) -> &Generator {
        &self.spec
    }

    pub fn coordinator_events(&self) -> &EventSet {
        &self.coordinator_events
    }

    pub fn coordinator(&self) -> &Generator {
        &self.coordinator
    }

    /// Alphabets `E_i` of the subsystems.
    pub fn alphabets(&self) -> Vec<EventSet> {
        self.plants.iter().map(|g| g.alphabet().clone()).collect()
    }

    /// `E_i ∪ E_k`.
    pub fn local_alphabet(&self, i: usize) -> EventSet {
        self.plants[i].alphabet().union(&self.coordinator_events)
    }

    /// Same problem with another specification.
    pub fn with_spec(&self, spec: &Generator) -> Result<Self, CoordinationError> {
        CoordinationProblem::new(
            self.plants.clone(),
            spec,
            self.coordinator_events.clone(),
            Some(self.coordinator.clone()),
        )
    }

    /// The global plant `G_1 ∥ .. ∥ G_n ∥ G_k`. Only needed for monolithic
    /// comparisons; the coordination procedures never build it.
    pub fn global_plant(&self) -> Result<Generator, FsmError> {
        compose_all(self.plants.iter().chain(std::iter::once(&self.coordinator)))
    }
}

/// Human-readable name of a condition: index 0 is the coordinator, index
/// `i > 0` is subsystem `i`.
pub(crate) fn condition_name(kind: &str, index: usize) -> String {
    if index == 0 {
        format!("{kind} condition 1 (coordinator)")
    } else {
        format!("{kind} condition {} (subsystem {index})", index + 1)
    }
}
