//! Event registry and event sets.
//!
//! Every problem works over one [`EventTable`]. Generators refer to events by
//! [`EventId`], an index into that table, and carry their own alphabet as an
//! [`EventSet`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::FsmError;

/// Index of an event in its [`EventTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(u32);

impl EventId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        EventId(u32::try_from(index).expect("event index overflow"))
    }
}

/// A finite word over the event table. The empty vector is the empty word.
pub type Word = Vec<EventId>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct EventInfo {
    name: String,
    controllable: bool,
}

/// Ordered registry of events with their controllability flags.
///
/// The uncontrollable events are exactly the events not flagged controllable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventTable {
    events: Vec<EventInfo>,
    by_name: HashMap<String, EventId>,
}

impl EventTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(name, controllable)` pairs, in order.
    pub fn from_events<'a, I>(events: I) -> Result<Self, FsmError>
    where
        I: IntoIterator<Item = (&'a str, bool)>,
    {
        let mut table = Self::new();
        for (name, controllable) in events {
            table.add(name, controllable)?;
        }
        Ok(table)
    }

    pub fn add(&mut self, name: &str, controllable: bool) -> Result<EventId, FsmError> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(FsmError::InvalidEventName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(FsmError::DuplicateEvent(name.to_string()));
        }
        let id = EventId::from_index(self.events.len());
        self.events.push(EventInfo {
            name: name.to_string(),
            controllable,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<EventId> {
        self.by_name.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<EventId, FsmError> {
        self.id(name)
            .ok_or_else(|| FsmError::UnknownEvent(name.to_string()))
    }

    pub fn name(&self, event: EventId) -> &str {
        &self.events[event.index()].name
    }

    pub fn is_controllable(&self, event: EventId) -> bool {
        self.events[event.index()].controllable
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.events.len()).map(EventId::from_index)
    }

    pub fn all(&self) -> EventSet {
        self.ids().collect()
    }

    pub fn controllable(&self) -> EventSet {
        self.ids().filter(|&e| self.is_controllable(e)).collect()
    }

    pub fn uncontrollable(&self) -> EventSet {
        self.ids().filter(|&e| !self.is_controllable(e)).collect()
    }

    /// Resolves a list of event names into a set.
    pub fn set(&self, names: &[&str]) -> Result<EventSet, FsmError> {
        names.iter().map(|n| self.lookup(n)).collect()
    }

    /// Parses a whitespace-separated word, e.g. `"a1 a2 a"`.
    pub fn word(&self, text: &str) -> Result<Word, FsmError> {
        text.split_whitespace().map(|n| self.lookup(n)).collect()
    }

    /// Renders a word with space-separated event names; `ε` for the empty word.
    pub fn format_word(&self, word: &[EventId]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&e| self.name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_set(&self, set: &EventSet) -> String {
        let names: Vec<_> = set.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Union of two tables by name. Events of `self` keep their position;
    /// new events of `other` are appended. Conflicting controllability flags
    /// are an error.
    pub fn merge(&self, other: &EventTable) -> Result<EventTable, FsmError> {
        let mut merged = self.clone();
        for info in &other.events {
            match merged.id(&info.name) {
                Some(id) if merged.is_controllable(id) != info.controllable => {
                    return Err(FsmError::ControllabilityConflict(info.name.clone()));
                }
                Some(_) => {}
                None => {
                    merged.add(&info.name, info.controllable)?;
                }
            }
        }
        Ok(merged)
    }
}

/// An ordered set of events. Iteration follows table order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventSet(BTreeSet<EventId>);

impl EventSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, event: EventId) -> bool {
        self.0.contains(&event)
    }

    pub fn insert(&mut self, event: EventId) -> bool {
        self.0.insert(event)
    }

    pub fn remove(&mut self, event: EventId) -> bool {
        self.0.remove(&event)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EventId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &EventSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn extend_from(&mut self, other: &EventSet) {
        self.0.extend(other.iter());
    }
}

impl FromIterator<EventId> for EventSet {
    fn from_iter<T: IntoIterator<Item = EventId>>(iter: T) -> Self {
        EventSet(iter.into_iter().collect())
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Erases from `word` every event outside `kept`.
pub fn project_word(word: &[EventId], kept: &EventSet) -> Word {
    word.iter().copied().filter(|&e| kept.contains(e)).collect()
}
