//! Tri-state verdicts with replayable witnesses.

use std::fmt;

use crate::fsm::{EventId, EventTable, Word};

/// Evidence that a property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A word in one language and not in the other.
    Word(Word),
    /// An event that violates an alphabet condition.
    Event(EventId),
    /// `prefix` is in the closure of the specification, `prefix·event` is in
    /// the plant but leaves the closure, and `event` is uncontrollable.
    Controllability { prefix: Word, event: EventId },
    /// `prefix` is in the closure of the language and its projection is a
    /// prefix of `target ∈ P(L)`, yet no extension of `prefix` projects onto
    /// `target`.
    Observer { prefix: Word, target: Word },
    /// `event` is reachable from `prefix` through the erased word `silent`,
    /// but not through erased uncontrollable events alone.
    Lcc {
        prefix: Word,
        silent: Word,
        event: EventId,
    },
}

impl Witness {
    pub fn display<'a>(&'a self, table: &'a EventTable) -> impl fmt::Display + 'a {
        WitnessDisplay {
            witness: self,
            table,
        }
    }
}

struct WitnessDisplay<'a> {
    witness: &'a Witness,
    table: &'a EventTable,
}

impl fmt::Display for WitnessDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.table;
        match self.witness {
            Witness::Word(w) => write!(f, "word {}", t.format_word(w)),
            Witness::Event(e) => write!(f, "event {}", t.name(*e)),
            Witness::Controllability { prefix, event } => write!(
                f,
                "prefix {} followed by uncontrollable {}",
                t.format_word(prefix),
                t.name(*event)
            ),
            Witness::Observer { prefix, target } => write!(
                f,
                "prefix {} cannot be extended to projected word {}",
                t.format_word(prefix),
                t.format_word(target)
            ),
            Witness::Lcc {
                prefix,
                silent,
                event,
            } => write!(
                f,
                "after {}, {} is reachable via {} but not via uncontrollable erased events",
                t.format_word(prefix),
                t.name(*event),
                t.format_word(silent)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    /// The property could not be evaluated because a hypothesis is missing.
    NotApplicable(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    pub(crate) fn from_word(missing: Option<Word>) -> Verdict {
        match missing {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(Witness::Word(w)),
        }
    }

    pub fn display<'a>(&'a self, table: &'a EventTable) -> impl fmt::Display + 'a {
        VerdictDisplay {
            verdict: self,
            table,
        }
    }
}

struct VerdictDisplay<'a> {
    verdict: &'a Verdict,
    table: &'a EventTable,
}

impl fmt::Display for VerdictDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Fails(w) => write!(f, "fails: {}", w.display(self.table)),
            Verdict::NotApplicable(why) => write!(f, "not applicable: {why}"),
        }
    }
}
