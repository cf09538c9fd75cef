//! JSON documents for automata and coordination problems.
//!
//! An automaton file lists the alphabet with controllability flags, the
//! states (a count or a list of names), the initial state, the marked states
//! and the transitions as `[src, "event", dst]` triples. States are referred
//! to by index or, when names are given, by name. The canonical rendering
//! produced by [`write_automaton`] has a fixed key order, states renumbered so
//! that the initial state is 0, and transitions sorted by source state and
//! event table index; parsing and re-rendering it is the identity.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use descoord::fsm::{EventSet, EventTable, Generator, StateId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {location}: {message}")]
    Invalid {
        path: String,
        location: String,
        message: String,
    },
}

impl FormatError {
    fn invalid(path: &str, location: impl Into<String>, message: impl ToString) -> Self {
        FormatError::Invalid {
            path: path.to_string(),
            location: location.into(),
            message: message.to_string(),
        }
    }

    fn parse(path: &str, e: serde_json::Error) -> Self {
        FormatError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        }
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDecl {
    pub name: String,
    pub controllable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum States {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateRef {
    Index(usize),
    Name(String),
}

/// Raw automaton document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub events: Vec<EventDecl>,
    pub states: States,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<StateRef>,
    #[serde(default)]
    pub marked: Vec<StateRef>,
    #[serde(default)]
    pub transitions: Vec<(StateRef, String, StateRef)>,
}

/// A generator together with optional state names.
#[derive(Clone, Debug)]
pub struct Model {
    pub generator: Generator,
    pub names: Option<Vec<String>>,
}

impl From<Generator> for Model {
    fn from(generator: Generator) -> Self {
        Model {
            generator,
            names: None,
        }
    }
}

impl Model {
    fn state_ref(&self, s: StateId) -> StateRef {
        match &self.names {
            Some(names) => StateRef::Name(names[s].clone()),
            None => StateRef::Index(s),
        }
    }

    /// Document for this model. Events are the alphabet in table order.
    pub fn to_file(&self) -> AutomatonFile {
        let g = &self.generator;
        let t = g.table();
        let n = g.num_states();
        AutomatonFile {
            events: g
                .alphabet()
                .iter()
                .map(|e| EventDecl {
                    name: t.name(e).to_string(),
                    controllable: t.is_controllable(e),
                })
                .collect(),
            states: match &self.names {
                Some(names) => States::Names(names.clone()),
                None => States::Count(n),
            },
            initial: g.initial().map(|s| self.state_ref(s)),
            marked: g.marked_states().map(|s| self.state_ref(s)).collect(),
            transitions: (0..n)
                .flat_map(|s| g.transitions(s).iter().map(move |&(e, d)| (s, e, d)))
                .map(|(s, e, d)| (self.state_ref(s), t.name(e).to_string(), self.state_ref(d)))
                .collect(),
        }
    }
}

impl AutomatonFile {
    /// Builds the generator on a fresh table holding exactly the declared
    /// events. `path` only labels errors.
    pub fn to_model(&self, path: &str) -> Result<Model, FormatError> {
        let mut table = EventTable::new();
        for (i, ev) in self.events.iter().enumerate() {
            table
                .add(&ev.name, ev.controllable)
                .map_err(|e| FormatError::invalid(path, format!("events[{i}]"), e))?;
        }
        let table = Arc::new(table);
        let (n, names) = match &self.states {
            States::Count(n) => (*n, None),
            States::Names(names) => (names.len(), Some(names.clone())),
        };
        let mut by_name = HashMap::new();
        if let Some(names) = &names {
            for (i, name) in names.iter().enumerate() {
                if by_name.insert(name.as_str(), i).is_some() {
                    return Err(FormatError::invalid(
                        path,
                        format!("states[{i}]"),
                        format!("duplicate state name {name:?}"),
                    ));
                }
            }
        }
        let resolve = |r: &StateRef, loc: String| -> Result<StateId, FormatError> {
            match r {
                StateRef::Index(i) if *i < n => Ok(*i),
                StateRef::Index(i) => Err(FormatError::invalid(
                    path,
                    loc,
                    format!("state {i} out of range (there are {n} states)"),
                )),
                StateRef::Name(s) => by_name
                    .get(s.as_str())
                    .copied()
                    .ok_or_else(|| FormatError::invalid(path, loc, format!("unknown state {s:?}"))),
            }
        };
        let initial = match &self.initial {
            Some(r) => resolve(r, "initial".into())?,
            None if n == 0 => 0,
            None => {
                return Err(FormatError::invalid(
                    path,
                    "initial",
                    "missing initial state",
                ));
            }
        };
        // renumber so that the initial state is 0
        let swap = |s: StateId| {
            if s == initial {
                0
            } else if s == 0 {
                initial
            } else {
                s
            }
        };
        let mut b = Generator::builder(&table, table.all());
        for _ in 0..n {
            b.add_state(false);
        }
        for (i, r) in self.marked.iter().enumerate() {
            let s = resolve(r, format!("marked[{i}]"))?;
            b.set_marked(swap(s), true)
                .map_err(|e| FormatError::invalid(path, format!("marked[{i}]"), e))?;
        }
        for (i, (src, ev, dst)) in self.transitions.iter().enumerate() {
            let s = resolve(src, format!("transitions[{i}][0]"))?;
            let d = resolve(dst, format!("transitions[{i}][2]"))?;
            let e = table.id(ev).ok_or_else(|| {
                FormatError::invalid(
                    path,
                    format!("transitions[{i}][1]"),
                    format!("event {ev:?} is not declared"),
                )
            })?;
            b.add_transition(swap(s), e, swap(d))
                .map_err(|err| FormatError::invalid(path, format!("transitions[{i}]"), err))?;
        }
        let generator = b
            .build()
            .map_err(|e| FormatError::invalid(path, "automaton", e))?;
        let names = names.map(|mut v| {
            if n > 0 {
                v.swap(0, initial);
            }
            v
        });
        Ok(Model { generator, names })
    }
}

/// Parses an automaton document. `path` only labels errors.
pub fn parse_automaton(text: &str, path: &str) -> Result<Model, FormatError> {
    let file: AutomatonFile =
        serde_json::from_str(text).map_err(|e| FormatError::parse(path, e))?;
    file.to_model(path)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn json_ref(r: &StateRef) -> String {
    match r {
        StateRef::Index(i) => i.to_string(),
        StateRef::Name(s) => json_str(s),
    }
}

/// Canonical text of a model: one event or transition per line, trailing
/// newline.
pub fn write_automaton(model: &Model) -> String {
    let f = model.to_file();
    let mut out = String::from("{\n  \"events\": [");
    let events: Vec<String> = f
        .events
        .iter()
        .map(|e| {
            format!(
                "{{\"name\": {}, \"controllable\": {}}}",
                json_str(&e.name),
                e.controllable
            )
        })
        .collect();
    write_block(&mut out, &events);
    out.push_str(",\n  \"states\": ");
    match &f.states {
        States::Count(n) => out.push_str(&n.to_string()),
        States::Names(names) => {
            let names: Vec<String> = names.iter().map(|s| json_str(s)).collect();
            let _ = write!(out, "[{}]", names.join(", "));
        }
    }
    if let Some(init) = &f.initial {
        let _ = write!(out, ",\n  \"initial\": {}", json_ref(init));
    }
    let marked: Vec<String> = f.marked.iter().map(json_ref).collect();
    let _ = write!(out, ",\n  \"marked\": [{}]", marked.join(", "));
    out.push_str(",\n  \"transitions\": [");
    let transitions: Vec<String> = f
        .transitions
        .iter()
        .map(|(s, e, d)| format!("[{}, {}, {}]", json_ref(s), json_str(e), json_ref(d)))
        .collect();
    write_block(&mut out, &transitions);
    out.push_str("\n}\n");
    out
}

fn write_block(out: &mut String, items: &[String]) {
    if items.is_empty() {
        out.push(']');
        return;
    }
    for (i, item) in items.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(item);
    }
    out.push_str("\n  ]");
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_automaton(path: &Path) -> Result<Model, FormatError> {
    parse_automaton(&read_text(path)?, &path.display().to_string())
}

pub fn save_text(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Moves models onto one merged table, in the given order. The first table
/// decides the index order of its events, later tables append new events.
pub fn share_table(models: Vec<(String, Model)>) -> Result<Vec<Model>, FormatError> {
    let mut table = EventTable::new();
    for (path, m) in &models {
        table = table
            .merge(m.generator.table())
            .map_err(|e| FormatError::invalid(path, "events", e))?;
    }
    let table = Arc::new(table);
    models
        .into_iter()
        .map(|(path, m)| {
            let generator = m
                .generator
                .rehome(&table)
                .map_err(|e| FormatError::invalid(&path, "events", e))?;
            Ok(Model {
                generator,
                names: m.names,
            })
        })
        .collect()
}

/// Reads several automata onto one shared table.
pub fn read_shared(paths: &[PathBuf]) -> Result<Vec<Model>, FormatError> {
    let models = paths
        .iter()
        .map(|p| Ok((p.display().to_string(), read_automaton(p)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    share_table(models)
}

/// Looks up event names in a table.
pub fn event_set(
    table: &EventTable,
    names: &[String],
    path: &str,
    location: &str,
) -> Result<EventSet, FormatError> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            table.id(n).ok_or_else(|| {
                FormatError::invalid(
                    path,
                    format!("{location}[{i}]"),
                    format!("unknown event {n:?}"),
                )
            })
        })
        .collect::<Result<EventSet, _>>()
}

/// Problem document. File names are relative to the document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// One automaton file per subsystem.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub plants: Vec<String>,
    /// Subsystem alphabets, for problems given without plants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabets: Option<Vec<Vec<String>>>,
    pub specification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinator_events: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinator: Option<String>,
    /// Extend the coordinator events until the projections are observers.
    #[serde(default)]
    pub observer_extension: bool,
    /// Use the prefix-closed synthesis.
    #[serde(default)]
    pub prefix_closed: bool,
}

impl ProblemFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem serializes");
        s.push('\n');
        s
    }
}

/// A problem with all automata on one table.
#[derive(Clone, Debug)]
pub struct Problem {
    pub table: Arc<EventTable>,
    pub plants: Vec<Generator>,
    pub alphabets: Vec<EventSet>,
    pub spec: Generator,
    pub coordinator_events: Option<EventSet>,
    pub coordinator: Option<Generator>,
    pub observer_extension: bool,
    pub prefix_closed: bool,
}

pub fn read_problem(path: &Path) -> Result<Problem, FormatError> {
    let label = path.display().to_string();
    let text = read_text(path)?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| FormatError::parse(&label, e))?;
    if !file.plants.is_empty() && file.alphabets.is_some() {
        return Err(FormatError::invalid(
            &label,
            "alphabets",
            "give either plants or alphabets, not both",
        ));
    }
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut paths = vec![dir.join(&file.specification)];
    paths.extend(file.plants.iter().map(|p| dir.join(p)));
    if let Some(c) = &file.coordinator {
        paths.push(dir.join(c));
    }
    let mut models = read_shared(&paths)?.into_iter().map(|m| m.generator);
    let spec = models.next().expect("specification is read");
    let plants: Vec<Generator> = models.by_ref().take(file.plants.len()).collect();
    let coordinator = models.next();
    let table = Arc::clone(spec.table());
    let alphabets = match &file.alphabets {
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, names)| event_set(&table, names, &label, &format!("alphabets[{i}]")))
            .collect::<Result<_, _>>()?,
        None => plants.iter().map(|g| g.alphabet().clone()).collect(),
    };
    let coordinator_events = file
        .coordinator_events
        .as_ref()
        .map(|names| event_set(&table, names, &label, "coordinator_events"))
        .transpose()?;
    Ok(Problem {
        table,
        plants,
        alphabets,
        spec,
        coordinator_events,
        coordinator,
        observer_extension: file.observer_extension,
        prefix_closed: file.prefix_closed,
    })
}

/// Names of a set of events, in table order.
pub fn event_names(table: &EventTable, set: &EventSet) -> Vec<String> {
    set.iter().map(|e| table.name(e).to_string()).collect()
}
