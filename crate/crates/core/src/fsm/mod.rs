//! Automaton representation and language-level operations.

mod compose;
mod event;
mod generator;
mod language;
mod minimize;
mod project;

use thiserror::Error;

pub(crate) use compose::intersect;
pub use compose::{compose_all, parallel_compose};
pub use event::{project_word, EventId, EventSet, EventTable, Word};
pub use generator::{Generator, GeneratorBuilder, StateId};
pub use language::{
    enumerate_bounded, language_diff, language_equal, language_subset, BoundedLanguage,
    LanguageDiff, LanguageRelation,
};
pub use minimize::minimize;
pub(crate) use project::{backward_reach, shortest_path, SilentClosure};
pub use project::{project, ProjectionSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FsmError {
    #[error("event names must be nonempty and contain no whitespace: {0:?}")]
    InvalidEventName(String),
    #[error("duplicate event {0}")]
    DuplicateEvent(String),
    #[error("unknown event {0}")]
    UnknownEvent(String),
    #[error("event {0} has conflicting controllability flags")]
    ControllabilityConflict(String),
    #[error("event {0} is not in the generator alphabet")]
    EventNotInAlphabet(String),
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("state {state} has two transitions on {event}")]
    Nondeterministic { state: usize, event: String },
    #[error("generators refer to different event tables")]
    TableMismatch,
    #[error("new alphabet must contain the old one")]
    AlphabetShrink,
    #[error("composition of an empty list")]
    NothingToCompose,
}
