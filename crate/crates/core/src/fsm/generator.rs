use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::event::{EventId, EventSet, EventTable, Word};
use super::FsmError;

pub type StateId = usize;

/// Deterministic finite automaton with a partial transition function and
/// marked states.
///
/// The zero-state generator is the canonical representation of the empty
/// language: it generates nothing, not even the empty word.
#[derive(Clone, Debug)]
pub struct Generator {
    table: Arc<EventTable>,
    alphabet: EventSet,
    initial: Option<StateId>,
    marked: Vec<bool>,
    // outgoing transitions per state, sorted by event
    delta: Vec<Vec<(EventId, StateId)>>,
}

impl Generator {
    /// The empty generator over `alphabet`.
    pub fn empty(table: &Arc<EventTable>, alphabet: EventSet) -> Self {
        Generator {
            table: Arc::clone(table),
            alphabet,
            initial: None,
            marked: Vec::new(),
            delta: Vec::new(),
        }
    }

    pub fn builder(table: &Arc<EventTable>, alphabet: EventSet) -> GeneratorBuilder {
        GeneratorBuilder {
            table: Arc::clone(table),
            alphabet,
            marked: Vec::new(),
            delta: Vec::new(),
        }
    }

    /// Builds a generator from named edges. State 0 is initial when
    /// `num_states > 0`.
    pub fn from_edges(
        table: &Arc<EventTable>,
        alphabet: &[&str],
        num_states: usize,
        marked: &[StateId],
        edges: &[(StateId, &str, StateId)],
    ) -> Result<Self, FsmError> {
        let mut b = Self::builder(table, table.set(alphabet)?);
        for _ in 0..num_states {
            b.add_state(false);
        }
        for &m in marked {
            b.set_marked(m, true)?;
        }
        for &(src, name, dst) in edges {
            b.add_transition(src, table.lookup(name)?, dst)?;
        }
        b.build()
    }

    /// Builds a trie-shaped generator whose marked language is exactly the
    /// given finite set of words (whitespace-separated event names; `""` is
    /// the empty word).
    pub fn from_words(
        table: &Arc<EventTable>,
        alphabet: &[&str],
        words: &[&str],
    ) -> Result<Self, FsmError> {
        let alpha = table.set(alphabet)?;
        let mut b = Self::builder(table, alpha);
        if words.is_empty() {
            return b.build();
        }
        b.add_state(false);
        for w in words {
            let mut state = 0;
            for e in table.word(w)? {
                state = match b.successor(state, e) {
                    Some(next) => next,
                    None => {
                        let next = b.add_state(false);
                        b.add_transition(state, e, next)?;
                        next
                    }
                };
            }
            b.set_marked(state, true)?;
        }
        b.build()
    }

    pub fn table(&self) -> &Arc<EventTable> {
        &self.table
    }

    pub fn alphabet(&self) -> &EventSet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.marked.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_none()
    }

    pub fn is_marked(&self, state: StateId) -> bool {
        self.marked[state]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.marked
            .iter()
            .enumerate()
            .filter_map(|(s, &m)| m.then_some(s))
    }

    pub fn transitions(&self, state: StateId) -> &[(EventId, StateId)] {
        &self.delta[state]
    }

    pub fn successor(&self, state: StateId, event: EventId) -> Option<StateId> {
        let out = &self.delta[state];
        out.binary_search_by_key(&event, |&(e, _)| e)
            .ok()
            .map(|i| out[i].1)
    }

    /// State reached by `word` from the initial state, if the word is generated.
    pub fn run(&self, word: &[EventId]) -> Option<StateId> {
        word.iter()
            .try_fold(self.initial?, |s, &e| self.successor(s, e))
    }

    /// Membership in the generated language.
    pub fn generates(&self, word: &[EventId]) -> bool {
        self.run(word).is_some()
    }

    /// Membership in the marked language.
    pub fn accepts(&self, word: &[EventId]) -> bool {
        self.run(word).is_some_and(|s| self.marked[s])
    }

    pub fn same_table(&self, other: &Generator) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    pub(crate) fn check_table(&self, other: &Generator) -> Result<(), FsmError> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(FsmError::TableMismatch)
        }
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let Some(init) = self.initial else {
            return seen;
        };
        let mut stack = vec![init];
        seen[init] = true;
        while let Some(s) = stack.pop() {
            for &(_, t) in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some marked state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (s, out) in self.delta.iter().enumerate() {
            for &(_, t) in out {
                rev[t].push(s);
            }
        }
        let mut seen = self.marked.clone();
        let mut stack: Vec<_> = self.marked_states().collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps only the states flagged in `keep`, renumbered in breadth-first
    /// order from the initial state. States not reachable through kept states
    /// are dropped as well.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Generator {
        let mut out = Generator::empty(&self.table, self.alphabet.clone());
        let Some(init) = self.initial.filter(|&i| keep[i]) else {
            return out;
        };
        let mut index = vec![usize::MAX; self.num_states()];
        let mut order = vec![init];
        index[init] = 0;
        let mut queue = VecDeque::from([init]);
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.delta[s] {
                if keep[t] && index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        out.initial = Some(0);
        out.marked = order.iter().map(|&s| self.marked[s]).collect();
        out.delta = order
            .iter()
            .map(|&s| {
                self.delta[s]
                    .iter()
                    .filter(|&&(_, t)| keep[t])
                    .map(|&(e, t)| (e, index[t]))
                    .collect()
            })
            .collect();
        out
    }

    /// Reachable part, renumbered breadth-first.
    pub fn accessible(&self) -> Generator {
        let keep = vec![true; self.num_states()];
        self.restrict(&keep)
    }

    /// Reachable and co-reachable part. Returns the empty generator when the
    /// marked language is empty.
    pub fn trim(&self) -> Generator {
        let keep = self.coreachable();
        self.restrict(&keep)
    }

    /// Every reachable state can reach a marked state.
    pub fn is_nonblocking(&self) -> bool {
        let r = self.reachable();
        let c = self.coreachable();
        r.iter().zip(&c).all(|(&r, &c)| !r || c)
    }

    /// Events on transitions leaving reachable states, i.e. the events that
    /// occur in some word of the generated language.
    pub fn event_range(&self) -> EventSet {
        let r = self.reachable();
        self.delta
            .iter()
            .enumerate()
            .filter(|&(s, _)| r[s])
            .flat_map(|(_, out)| out.iter().map(|&(e, _)| e))
            .collect()
    }

    /// Same transitions, with every state marked.
    pub fn mark_all(&self) -> Generator {
        let mut g = self.clone();
        g.marked.iter_mut().for_each(|m| *m = true);
        g
    }

    /// Generator whose marked and generated languages both equal the prefix
    /// closure of the marked language.
    pub fn prefix_closure(&self) -> Generator {
        self.trim().mark_all()
    }

    /// Same automaton over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: EventSet) -> Result<Generator, FsmError> {
        if !self.alphabet.is_subset(&alphabet) {
            return Err(FsmError::AlphabetShrink);
        }
        let mut g = self.clone();
        g.alphabet = alphabet;
        Ok(g)
    }

    /// Inverse projection: adds a self-loop at every state for each event of
    /// `events` that is not already in the alphabet.
    pub fn selfloop(&self, events: &EventSet) -> Generator {
        let extra = events.difference(&self.alphabet);
        let mut g = self.clone();
        g.alphabet = self.alphabet.union(&extra);
        for (s, out) in g.delta.iter_mut().enumerate() {
            out.extend(extra.iter().map(|e| (e, s)));
            out.sort_unstable();
        }
        g
    }

    /// Moves this generator onto a table that contains all of its events,
    /// matching events by name.
    pub fn rehome(&self, table: &Arc<EventTable>) -> Result<Generator, FsmError> {
        let map = |e: EventId| -> Result<EventId, FsmError> {
            let name = self.table.name(e);
            let id = table.lookup(name)?;
            if table.is_controllable(id) != self.table.is_controllable(e) {
                return Err(FsmError::ControllabilityConflict(name.to_string()));
            }
            Ok(id)
        };
        let alphabet = self.alphabet.iter().map(map).collect::<Result<_, _>>()?;
        let delta = self
            .delta
            .iter()
            .map(|out| {
                let mut v = out
                    .iter()
                    .map(|&(e, t)| Ok((map(e)?, t)))
                    .collect::<Result<Vec<_>, FsmError>>()?;
                v.sort_unstable();
                Ok(v)
            })
            .collect::<Result<_, FsmError>>()?;
        Ok(Generator {
            table: Arc::clone(table),
            alphabet,
            initial: self.initial,
            marked: self.marked.clone(),
            delta,
        })
    }

    /// Shortest word (shortlex-least) from `from` to a marked state.
    pub fn shortest_completion(&self, from: StateId) -> Option<Word> {
        self.shortest_word_to(from, |s| self.marked[s])
    }

    /// Shortlex-least generated word leading to a state from which no marked
    /// state is reachable, if any.
    pub fn blocking_word(&self) -> Option<Word> {
        let c = self.coreachable();
        self.shortest_word_to(self.initial?, |s| !c[s])
    }

    fn shortest_word_to(&self, from: StateId, target: impl Fn(StateId) -> bool) -> Option<Word> {
        let mut parent: Vec<Option<(StateId, EventId)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            if target(s) {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((p, e)) = parent[cur] {
                    word.push(e);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for &(e, t) in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, e));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// All transitions as a sorted `(state, event) -> state` map.
    pub fn transition_map(&self) -> BTreeMap<(StateId, EventId), StateId> {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(s, out)| out.iter().map(move |&(e, t)| ((s, e), t)))
            .collect()
    }

    pub(crate) fn from_parts(
        table: &Arc<EventTable>,
        alphabet: EventSet,
        marked: Vec<bool>,
        delta: Vec<Vec<(EventId, StateId)>>,
    ) -> Generator {
        debug_assert_eq!(marked.len(), delta.len());
        debug_assert!(delta
            .iter()
            .all(|out| out.windows(2).all(|w| w[0].0 < w[1].0)));
        Generator {
            table: Arc::clone(table),
            alphabet,
            initial: (!marked.is_empty()).then_some(0),
            marked,
            delta,
        }
    }
}

/// Incremental construction with determinism checks. The first state added
/// is the initial state.
#[derive(Debug)]
pub struct GeneratorBuilder {
    table: Arc<EventTable>,
    alphabet: EventSet,
    marked: Vec<bool>,
    delta: Vec<Vec<(EventId, StateId)>>,
}

impl GeneratorBuilder {
    pub fn add_state(&mut self, marked: bool) -> StateId {
        self.marked.push(marked);
        self.delta.push(Vec::new());
        self.marked.len() - 1
    }

    pub fn set_marked(&mut self, state: StateId, marked: bool) -> Result<(), FsmError> {
        let slot = self
            .marked
            .get_mut(state)
            .ok_or(FsmError::StateOutOfRange(state))?;
        *slot = marked;
        Ok(())
    }

    pub fn successor(&self, state: StateId, event: EventId) -> Option<StateId> {
        self.delta[state]
            .iter()
            .find(|&&(e, _)| e == event)
            .map(|&(_, t)| t)
    }

    pub fn add_transition(
        &mut self,
        src: StateId,
        event: EventId,
        dst: StateId,
    ) -> Result<(), FsmError> {
        let n = self.marked.len();
        if src >= n {
            return Err(FsmError::StateOutOfRange(src));
        }
        if dst >= n {
            return Err(FsmError::StateOutOfRange(dst));
        }
        if !self.alphabet.contains(event) {
            return Err(FsmError::EventNotInAlphabet(
                self.table.name(event).to_string(),
            ));
        }
        match self.successor(src, event) {
            Some(t) if t == dst => Ok(()),
            Some(_) => Err(FsmError::Nondeterministic {
                state: src,
                event: self.table.name(event).to_string(),
            }),
            None => {
                self.delta[src].push((event, dst));
                Ok(())
            }
        }
    }

    pub fn build(mut self) -> Result<Generator, FsmError> {
        for out in &mut self.delta {
            out.sort_unstable();
        }
        Ok(Generator::from_parts(
            &self.table,
            self.alphabet,
            self.marked,
            self.delta,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<EventTable> {
        Arc::new(EventTable::from_events([("a", true), ("b", true), ("u", false)]).unwrap())
    }

    #[test]
    fn builder_rejects_nondeterminism() {
        let t = table();
        let err = Generator::from_edges(&t, &["a"], 3, &[], &[(0, "a", 1), (0, "a", 2)]);
        assert!(matches!(err, Err(FsmError::Nondeterministic { .. })));
    }

    #[test]
    fn builder_rejects_foreign_events_and_bad_states() {
        let t = table();
        assert!(matches!(
            Generator::from_edges(&t, &["a"], 2, &[], &[(0, "b", 1)]),
            Err(FsmError::EventNotInAlphabet(_))
        ));
        assert!(matches!(
            Generator::from_edges(&t, &["a"], 2, &[], &[(0, "a", 5)]),
            Err(FsmError::StateOutOfRange(5))
        ));
    }

    #[test]
    fn blocking_word_is_shortest() {
        let t = table();
        // 0 -a-> 1 (marked), 0 -b-> 2 -a-> 3 (dead end)
        let g = Generator::from_edges(
            &t,
            &["a", "b"],
            4,
            &[1],
            &[(0, "a", 1), (0, "b", 2), (2, "a", 3)],
        )
        .unwrap();
        assert_eq!(g.blocking_word(), Some(t.word("b").unwrap()));
        assert_eq!(g.trim().blocking_word(), None);
        assert_eq!(Generator::empty(&t, t.all()).blocking_word(), None);
    }

    #[test]
    fn trim_of_already_trim_is_identity() {
        let t = table();
        let g = Generator::from_words(&t, &["a", "b"], &["a b", "b"]).unwrap();
        let tg = g.trim();
        assert_eq!(tg.num_states(), g.num_states());
        assert_eq!(tg.transition_map(), g.trim().trim().transition_map());
    }

    #[test]
    fn trim_drops_unreachable_state() {
        let t = table();
        // state 2 is unreachable
        let g = Generator::from_edges(&t, &["a", "b"], 3, &[1, 2], &[(0, "a", 1), (2, "b", 1)])
            .unwrap();
        let tg = g.trim();
        assert_eq!(tg.num_states(), 2);
        let w = t.word("a").unwrap();
        assert!(tg.accepts(&w));
    }

    #[test]
    fn trim_without_marked_states_is_empty() {
        let t = table();
        let g = Generator::from_edges(&t, &["a"], 2, &[], &[(0, "a", 1)]).unwrap();
        let tg = g.trim();
        assert!(tg.is_empty());
        assert_eq!(tg.num_states(), 0);
        assert!(tg.is_nonblocking());
    }

    #[test]
    fn nonblocking_detection() {
        let t = table();
        let all = Generator::from_edges(&t, &["a"], 2, &[0, 1], &[(0, "a", 1)]).unwrap();
        assert!(all.is_nonblocking());
        let sink = Generator::from_edges(&t, &["a"], 2, &[0], &[(0, "a", 1)]).unwrap();
        assert!(!sink.is_nonblocking());
        assert!(sink.trim().is_nonblocking());
    }

    #[test]
    fn event_range_ignores_unreachable_transitions() {
        let t = table();
        let g =
            Generator::from_edges(&t, &["a", "b"], 3, &[1], &[(0, "a", 1), (2, "b", 1)]).unwrap();
        assert_eq!(g.event_range(), t.set(&["a"]).unwrap());
        assert_eq!(g.trim().event_range(), t.set(&["a"]).unwrap());
        assert!(Generator::empty(&t, t.all()).event_range().is_empty());
    }

    #[test]
    fn selfloop_adds_only_new_events() {
        let t = table();
        let g = Generator::from_words(&t, &["a"], &["a"]).unwrap();
        let s = g.selfloop(&t.set(&["a", "u"]).unwrap());
        assert_eq!(s.alphabet(), &t.set(&["a", "u"]).unwrap());
        assert!(s.accepts(&t.word("u a u").unwrap()));
        assert!(!s.generates(&t.word("a a").unwrap()));
    }
}
