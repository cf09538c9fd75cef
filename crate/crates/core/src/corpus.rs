//! Worked examples as ready-made fixtures.
//!
//! The database and counterexample automata are reconstructions from prose
//! descriptions; their published drawings are not available in machine
//! readable form.

use std::sync::Arc;

use crate::coordination::{CoordinationError, CoordinationProblem};
use crate::fsm::{compose_all, EventSet, EventTable, Generator};

/// A language with subsystem and coordinator alphabets, for decomposability.
#[derive(Clone, Debug)]
pub struct DecompositionFixture {
    pub name: &'static str,
    pub table: Arc<EventTable>,
    pub k: Generator,
    pub alphabets: Vec<EventSet>,
    pub ek: EventSet,
}

/// Subsystems, specification and coordinator events.
#[derive(Clone, Debug)]
pub struct ProblemFixture {
    pub name: &'static str,
    pub table: Arc<EventTable>,
    pub plants: Vec<Generator>,
    pub spec: Generator,
    pub ek: EventSet,
    /// Explicit coordinator; otherwise it is built from projections.
    pub coordinator: Option<Generator>,
}

impl ProblemFixture {
    pub fn problem(&self) -> Result<CoordinationProblem, CoordinationError> {
        CoordinationProblem::new(
            self.plants.clone(),
            &self.spec,
            self.ek.clone(),
            self.coordinator.clone(),
        )
    }

    pub fn alphabets(&self) -> Vec<EventSet> {
        self.plants.iter().map(|g| g.alphabet().clone()).collect()
    }

    /// Same fixture with every plant and the specification replaced by the
    /// prefix closures of their marked languages.
    pub fn prefix_closed_problem(&self) -> Result<CoordinationProblem, CoordinationError> {
        CoordinationProblem::new(
            self.plants.iter().map(Generator::prefix_closure).collect(),
            &self.spec.prefix_closure(),
            self.ek.clone(),
            self.coordinator.as_ref().map(Generator::prefix_closure),
        )
    }
}

fn table(events: &[(&str, bool)]) -> Arc<EventTable> {
    Arc::new(EventTable::from_events(events.iter().copied()).expect("fixture events"))
}

fn set(t: &EventTable, names: &[&str]) -> EventSet {
    t.set(names).expect("fixture events")
}

fn words(t: &Arc<EventTable>, alphabet: &[&str], ws: &[&str]) -> Generator {
    Generator::from_words(t, alphabet, ws).expect("fixture words")
}

/// `K = {a1a2a, a2a1a, b1b2b, b2b1b}` with `E_k = {a, b}`: `K` is
/// conditionally decomposable, its closure is not (witness `a1 b2`).
pub fn example_one() -> DecompositionFixture {
    let t = table(&[
        ("a1", true),
        ("b1", true),
        ("a2", true),
        ("b2", true),
        ("a", true),
        ("b", true),
    ]);
    let k = words(
        &t,
        &["a1", "b1", "a2", "b2", "a", "b"],
        &["a1 a2 a", "a2 a1 a", "b1 b2 b", "b2 b1 b"],
    );
    DecompositionFixture {
        name: "example-one",
        alphabets: vec![
            set(&t, &["a1", "b1", "a", "b"]),
            set(&t, &["a2", "b2", "a", "b"]),
        ],
        ek: set(&t, &["a", "b"]),
        k,
        table: t,
    }
}

/// `L = {ε, ab, ba, abc, bac}` with `E_1 = {a, c}`, `E_2 = {b, c}`,
/// `E_k = {c}`: the closure is conditionally decomposable, `L` is not.
pub fn example_one_second() -> DecompositionFixture {
    let t = table(&[("a", true), ("b", true), ("c", true)]);
    let k = words(&t, &["a", "b", "c"], &["", "a b", "b a", "a b c", "b a c"]);
    DecompositionFixture {
        name: "example-one-second",
        alphabets: vec![set(&t, &["a", "c"]), set(&t, &["b", "c"])],
        ek: set(&t, &["c"]),
        k,
        table: t,
    }
}

/// `G_1 = closure{au}`, `G_2 = closure{bu}`, `u` uncontrollable, `K = {a}`,
/// `E_k = {u}`. `K` is controllable wrt `L(G_1 ∥ G_2)` but `P_k(K) = {ε}`
/// is not controllable wrt `L(G_k) = closure{u}`.
pub fn controllability_example() -> ProblemFixture {
    let t = table(&[("a", true), ("b", true), ("u", false)]);
    let g1 = words(&t, &["a", "u"], &["a u"]).prefix_closure();
    let g2 = words(&t, &["b", "u"], &["b u"]).prefix_closure();
    let spec = words(&t, &["a", "b", "u"], &["a"]);
    ProblemFixture {
        name: "controllability-example",
        plants: vec![g1, g2],
        spec,
        ek: set(&t, &["u"]),
        coordinator: None,
        table: t,
    }
}

/// `Lm(G_1) = {a1 a}`, `Lm(G_2) = {a2 a}`, `Lm(G_k) = {ε, a}`,
/// `K = {a1a2a, a2a1a}`. `K` is `Lm(G)`-closed, `P_k(K)` is not
/// `Lm(G_k)`-closed.
pub fn closedness_example() -> ProblemFixture {
    let t = table(&[("a1", true), ("a2", true), ("a", true)]);
    let g1 = words(&t, &["a1", "a"], &["a1 a"]);
    let g2 = words(&t, &["a2", "a"], &["a2 a"]);
    let gk = Generator::from_edges(&t, &["a"], 2, &[0, 1], &[(0, "a", 1)]).expect("fixture");
    let spec = words(&t, &["a1", "a2", "a"], &["a1 a2 a", "a2 a1 a"]);
    ProblemFixture {
        name: "closedness-example",
        plants: vec![g1, g2],
        spec,
        ek: set(&t, &["a"]),
        coordinator: Some(gk),
        table: t,
    }
}

/// Three database transactions. User `i` cycles request `r_i`, access `a_i`,
/// exit `e_i`; only the accesses are controllable. The specification lets
/// no other access happen between `a_i` and `e_i`. Coordinator events are
/// the accesses.
pub fn database() -> ProblemFixture {
    let t = table(&[
        ("a1", true),
        ("a2", true),
        ("a3", true),
        ("r1", false),
        ("r2", false),
        ("r3", false),
        ("e1", false),
        ("e2", false),
        ("e3", false),
    ]);
    let user = |i: usize| {
        let (r, a, e) = (format!("r{i}"), format!("a{i}"), format!("e{i}"));
        Generator::from_edges(
            &t,
            &[&r, &a, &e],
            3,
            &[0],
            &[(0, &r, 1), (1, &a, 2), (2, &e, 0)],
        )
        .expect("fixture")
    };
    let plants: Vec<Generator> = (1..=3).map(user).collect();
    let mutex = Generator::from_edges(
        &t,
        &["a1", "e1", "a2", "e2", "a3", "e3"],
        4,
        &[0],
        &[
            (0, "a1", 1),
            (1, "e1", 0),
            (0, "a2", 2),
            (2, "e2", 0),
            (0, "a3", 3),
            (3, "e3", 0),
        ],
    )
    .expect("fixture");
    let spec = crate::fsm::minimize(
        &compose_all(plants.iter().chain(std::iter::once(&mutex))).expect("fixture"),
    );
    ProblemFixture {
        name: "database",
        plants,
        spec,
        ek: set(&t, &["a1", "a2", "a3"]),
        coordinator: None,
        table: t,
    }
}

/// Inclusion counterexample. `G_i = closure{a_i u_i}` with `u_i`
/// uncontrollable, `K = closure{a1a2, a2a1}·{u1u2, u2u1}`,
/// `E_k = {a1, a2}`. Then `supC_k = closure{a1a2, a2a1}` while
/// `supC_{1+k} = closure{a2a1u1}`.
pub fn inclusion_counterexample() -> ProblemFixture {
    let t = table(&[("a1", true), ("a2", true), ("u1", false), ("u2", false)]);
    let g1 = words(&t, &["a1", "u1"], &["a1 u1"]).prefix_closure();
    let g2 = words(&t, &["a2", "u2"], &["a2 u2"]).prefix_closure();
    let spec = words(
        &t,
        &["a1", "a2", "u1", "u2"],
        &["a1 a2 u1 u2", "a1 a2 u2 u1", "a2 a1 u1 u2", "a2 a1 u2 u1"],
    )
    .prefix_closure();
    ProblemFixture {
        name: "inclusion-counterexample",
        plants: vec![g1, g2],
        spec,
        ek: set(&t, &["a1", "a2"]),
        coordinator: None,
        table: t,
    }
}

pub fn decomposition_fixtures() -> Vec<DecompositionFixture> {
    vec![example_one(), example_one_second()]
}

pub fn problem_fixtures() -> Vec<ProblemFixture> {
    vec![
        controllability_example(),
        closedness_example(),
        database(),
        inclusion_counterexample(),
    ]
}
