use descoord_cli::format::{
    parse_automaton, write_automaton, AutomatonFile, EventDecl, StateRef, States,
};
use proptest::prelude::*;

/// Random automaton document: initial state anywhere, optional state names,
/// duplicate `(src, event)` pairs dropped to keep it deterministic.
fn document() -> impl Strategy<Value = AutomatonFile> {
    (1usize..6, 1usize..5, any::<bool>()).prop_flat_map(|(n, m, named)| {
        (
            prop::collection::vec(any::<bool>(), m),
            0..n,
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((0..n, 0..m, 0..n), 0..12),
        )
            .prop_map(move |(flags, initial, marked, edges)| {
                let state = |s: usize| {
                    if named {
                        StateRef::Name(format!("q{s}"))
                    } else {
                        StateRef::Index(s)
                    }
                };
                let mut seen = std::collections::HashSet::new();
                AutomatonFile {
                    events: flags
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| EventDecl {
                            name: format!("e{i}"),
                            controllable: c,
                        })
                        .collect(),
                    states: if named {
                        States::Names((0..n).map(|s| format!("q{s}")).collect())
                    } else {
                        States::Count(n)
                    },
                    initial: Some(state(initial)),
                    marked: (0..n).filter(|&s| marked[s]).map(state).collect(),
                    transitions: edges
                        .into_iter()
                        .filter(|&(s, e, _)| seen.insert((s, e)))
                        .map(|(s, e, d)| (state(s), format!("e{e}"), state(d)))
                        .collect(),
                }
            })
    })
}

proptest! {
    #[test]
    fn canonical_text_is_a_fixpoint(doc in document()) {
        let text = serde_json::to_string(&doc).unwrap();
        let first = write_automaton(&parse_automaton(&text, "doc").unwrap());
        let second = write_automaton(&parse_automaton(&first, "doc").unwrap());
        prop_assert_eq!(first, second);
    }

    #[test]
    fn reparsing_preserves_the_generator(doc in document()) {
        let text = serde_json::to_string(&doc).unwrap();
        let a = parse_automaton(&text, "doc").unwrap().generator;
        let b = parse_automaton(&write_automaton(&parse_automaton(&text, "doc").unwrap()), "doc")
            .unwrap()
            .generator;
        prop_assert_eq!(a.transition_map(), b.transition_map());
        prop_assert_eq!(a.marked_states().collect::<Vec<_>>(), b.marked_states().collect::<Vec<_>>());
        prop_assert_eq!(a.num_states(), doc_states(&doc));
    }
}

fn doc_states(doc: &AutomatonFile) -> usize {
    match &doc.states {
        States::Count(n) => *n,
        States::Names(v) => v.len(),
    }
}
