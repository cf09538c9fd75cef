//! JSON report of a coordination run.

use descoord::coordination::PipelineReport;
use descoord::fsm::{EventTable, Generator};
use descoord::Verdict;
use serde::Serialize;

use crate::format::event_names;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub name: String,
    /// `holds`, `fails` or `not applicable`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VerdictEntry {
    pub fn new(name: impl Into<String>, v: &Verdict, table: &EventTable) -> Self {
        let (status, witness, reason) = match v {
            Verdict::Holds => ("holds", None, None),
            Verdict::Fails(w) => ("fails", Some(w.display(table).to_string()), None),
            Verdict::NotApplicable(why) => ("not applicable", None, Some(why.clone())),
        };
        VerdictEntry {
            name: name.into(),
            status: status.into(),
            witness,
            reason,
        }
    }
}

/// An automaton written next to the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObserverEntry {
    pub subsystem: usize,
    pub marked: VerdictEntry,
    pub generated: VerdictEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Supervisors {
    pub coordinator: FileEntry,
    pub local: Vec<FileEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonblockingEntry {
    pub events: Vec<String>,
    pub coordinator: FileEntry,
    pub nonblocking: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub closure_unchanged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinationReport {
    pub all_hold: bool,
    pub coordinator_events: Vec<String>,
    pub coordinator: FileEntry,
    pub observers: Vec<ObserverEntry>,
    pub verdicts: Vec<VerdictEntry>,
    pub supervisors: Supervisors,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supcc: Option<FileEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonblocking: Option<NonblockingEntry>,
}

impl CoordinationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Report plus the automata it refers to, keyed by file name.
pub fn build(
    r: &PipelineReport,
    table: &EventTable,
) -> (CoordinationReport, Vec<(String, Generator)>) {
    let mut files = Vec::new();
    let mut entry = |file: String, g: &Generator| {
        files.push((file.clone(), g.clone()));
        FileEntry {
            file,
            states: g.num_states(),
            transitions: g.num_transitions(),
        }
    };
    let coordinator = entry("coordinator.json".into(), &r.coordinator);
    let supervisors = Supervisors {
        coordinator: entry("supervisor_k.json".into(), &r.triplet.supc_k),
        local: r
            .triplet
            .supc_local
            .iter()
            .enumerate()
            .map(|(i, g)| entry(format!("supervisor_{}.json", i + 1), g))
            .collect(),
    };
    let supcc = r.supcc.as_ref().map(|g| entry("supcc.json".into(), g));
    let nonblocking = r.nonblocking.as_ref().map(|nb| NonblockingEntry {
        events: event_names(table, &nb.events),
        coordinator: entry("nonblocking_coordinator.json".into(), &nb.coordinator),
        nonblocking: nb.nonblocking == Ok(true),
        error: nb.nonblocking.as_ref().err().cloned(),
        closure_unchanged: nb.closure_unchanged,
    });
    let report = CoordinationReport {
        all_hold: r.all_hold() && r.supcc.is_some(),
        coordinator_events: event_names(table, &r.coordinator_events),
        coordinator,
        observers: r
            .observers
            .iter()
            .enumerate()
            .map(|(i, o)| ObserverEntry {
                subsystem: i + 1,
                marked: VerdictEntry::new("observer", &o.marked, table),
                generated: VerdictEntry::new(
                    "observer of the generated language",
                    &o.generated,
                    table,
                ),
            })
            .collect(),
        verdicts: r
            .verdicts
            .iter()
            .map(|(name, v)| VerdictEntry::new(name.clone(), v, table))
            .collect(),
        supervisors,
        supcc,
        nonblocking,
    };
    (report, files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use descoord::coordination::{run, PipelineOptions};
    use descoord::corpus;
    use descoord::Witness;

    #[test]
    fn verdict_entries() {
        let t = EventTable::from_events([("a", true)]).unwrap();
        let a = t.id("a").unwrap();
        let e = VerdictEntry::new("x", &Verdict::Fails(Witness::Word(vec![a, a])), &t);
        assert_eq!(e.status, "fails");
        assert_eq!(e.witness.as_deref(), Some("word a a"));
        let e = VerdictEntry::new("y", &Verdict::NotApplicable("no".into()), &t);
        assert_eq!(e.reason.as_deref(), Some("no"));
        let json = serde_json::to_string(&VerdictEntry::new("z", &Verdict::Holds, &t)).unwrap();
        assert_eq!(json, r#"{"name":"z","status":"holds"}"#);
    }

    #[test]
    fn database_report() {
        let db = corpus::database();
        let opts = PipelineOptions {
            coordinator_events: Some(db.ek.clone()),
            ..Default::default()
        };
        let r = run(db.plants.clone(), &db.spec, &opts).unwrap();
        let (report, files) = build(&r, &db.table);
        assert!(report.all_hold);
        assert_eq!(report.coordinator_events, ["a1", "a2", "a3"]);
        assert!(report.supervisors.local.iter().all(|f| f.states == 3));
        let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(
            names,
            [
                "coordinator.json",
                "supervisor_k.json",
                "supervisor_1.json",
                "supervisor_2.json",
                "supervisor_3.json",
                "supcc.json",
                "nonblocking_coordinator.json"
            ]
        );
        assert_eq!(report.to_json(), build(&r, &db.table).0.to_json());
    }

    #[test]
    fn counterexample_report_has_no_result() {
        let ex = corpus::inclusion_counterexample();
        let opts = PipelineOptions {
            coordinator_events: Some(ex.ek.clone()),
            ..Default::default()
        };
        let r = run(ex.plants.clone(), &ex.spec, &opts).unwrap();
        let (report, _) = build(&r, &ex.table);
        assert!(!report.all_hold);
        assert!(report.supcc.is_none());
        assert!(report
            .verdicts
            .iter()
            .any(|v| v.status == "fails" && v.witness.is_some()));
    }
}
