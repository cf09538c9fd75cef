//! Seeded generation of small random automata and coordination problems.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coordination::{shared_events, CoordinationProblem};
use crate::fsm::{compose_all, EventSet, EventTable, Generator, ProjectionSpec};

/// Size limits of the generated instances.
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_states: usize,
    pub events: usize,
    /// Probability that a given state has a transition on a given event.
    pub density: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_states: 5,
            events: 4,
            density: 0.45,
        }
    }
}

/// Events `e0 .. e{n-1}`, each uncontrollable with probability one half.
/// At least one event of each kind when `n ≥ 2`.
pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> Arc<EventTable> {
    let mut flags: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    if n >= 2 && flags.iter().all(|&c| c == flags[0]) {
        let i = rng.gen_range(0..n);
        flags[i] = !flags[i];
    }
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    Arc::new(
        EventTable::from_events(names.iter().map(String::as_str).zip(flags))
            .expect("generated names are valid"),
    )
}

/// Random deterministic generator over `alphabet` with between one and
/// `max_states` states. With `acyclic`, every transition goes to a higher
/// numbered state, so the generated language is finite.
pub fn random_generator<R: Rng>(
    rng: &mut R,
    table: &Arc<EventTable>,
    alphabet: &EventSet,
    max_states: usize,
    density: f64,
    acyclic: bool,
) -> Generator {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut b = Generator::builder(table, alphabet.clone());
    for _ in 0..n {
        let marked = rng.gen_bool(0.5);
        b.add_state(marked);
    }
    for s in 0..n {
        for e in alphabet.iter() {
            if !rng.gen_bool(density) {
                continue;
            }
            let t = if acyclic {
                if s + 1 >= n {
                    continue;
                }
                rng.gen_range(s + 1..n)
            } else {
                rng.gen_range(0..n)
            };
            b.add_transition(s, e, t).expect("fresh transition");
        }
    }
    b.build().expect("valid generator")
}

/// Random subset of `from`, each element with probability `p`.
pub fn random_subset<R: Rng>(rng: &mut R, from: &EventSet, p: f64) -> EventSet {
    let mut s = EventSet::new();
    for e in from.iter() {
        if rng.gen_bool(p) {
            s.insert(e);
        }
    }
    s
}

/// Plant and specification for monolithic synthesis: a cyclic plant and an
/// acyclic specification over the same events.
#[derive(Clone, Debug)]
pub struct SupconInstance {
    pub table: Arc<EventTable>,
    pub plant: Generator,
    pub spec: Generator,
}

pub fn random_supcon_instance<R: Rng>(rng: &mut R, params: &RandomParams) -> SupconInstance {
    let table = random_table(rng, params.events);
    let all = table.all();
    let plant = random_generator(rng, &table, &all, params.max_states, params.density, false);
    let spec = random_generator(
        rng,
        &table,
        &all,
        params.max_states,
        params.density + 0.2,
        true,
    );
    SupconInstance { table, plant, spec }
}

/// A nonempty trim generator together with a random projection.
pub fn random_observer_instance<R: Rng>(
    rng: &mut R,
    params: &RandomParams,
    acyclic: bool,
) -> (Generator, ProjectionSpec) {
    let table = random_table(rng, params.events);
    let all = table.all();
    loop {
        let g = random_generator(
            rng,
            &table,
            &all,
            params.max_states,
            params.density,
            acyclic,
        )
        .trim();
        if !g.is_empty() {
            let kept = random_subset(rng, &all, 0.5);
            return (g, ProjectionSpec::new(kept));
        }
    }
}

/// Two subsystems over random alphabets with random coordinator events.
///
/// Each event belongs to the first, the second or both subsystems. The
/// specification is `K_1 ∥ K_2 ∥ G_1 ∥ G_2 ∥ G_k`, trimmed, for acyclic
/// `K_i` over `E_i ∪ E_k`, so it is finite, conditionally decomposable and
/// contained in the marked plant language. Returns `None` when the
/// specification is empty.
pub fn random_problem<R: Rng>(rng: &mut R, params: &RandomParams) -> Option<CoordinationProblem> {
    let table = random_table(rng, params.events);
    let ids: Vec<_> = table.ids().collect();
    let (mut e1, mut e2) = (EventSet::new(), EventSet::new());
    for &e in &ids {
        match rng.gen_range(0..3) {
            0 => e1.insert(e),
            1 => e2.insert(e),
            _ => {
                e1.insert(e);
                e2.insert(e)
            }
        };
    }
    if e1.is_empty() {
        e1.insert(*ids.choose(rng).expect("nonempty table"));
    }
    if e2.is_empty() {
        e2.insert(*ids.choose(rng).expect("nonempty table"));
    }
    let states = params.max_states.min(3);
    let g1 = random_generator(rng, &table, &e1, states, params.density + 0.2, false);
    let g2 = random_generator(rng, &table, &e2, states, params.density + 0.2, false);
    let plants = vec![g1, g2];
    let mut ek = shared_events(&plants);
    ek.extend_from(&random_subset(rng, &table.all().difference(&ek), 0.25));
    let gk = crate::coordination::decompose::coordinator_from_projections(&plants, &ek)
        .expect("same table");
    let k1 = random_generator(
        rng,
        &table,
        &e1.union(&ek),
        states,
        params.density + 0.3,
        true,
    );
    let k2 = random_generator(
        rng,
        &table,
        &e2.union(&ek),
        states,
        params.density + 0.3,
        true,
    );
    let spec = compose_all([&k1, &k2, &plants[0], &plants[1], &gk])
        .expect("same table")
        .trim();
    if spec.is_empty() {
        return None;
    }
    CoordinationProblem::new(plants, &spec, ek, Some(gk)).ok()
}

/// Between two and three trim languages over random alphabets of one table.
pub fn random_languages<R: Rng>(rng: &mut R, params: &RandomParams) -> Vec<Generator> {
    let table = random_table(rng, params.events);
    let all = table.all();
    let n = rng.gen_range(2..=3);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let alphabet = random_subset(rng, &all, 0.6);
        if alphabet.is_empty() {
            continue;
        }
        let g = random_generator(
            rng,
            &table,
            &alphabet,
            params.max_states,
            params.density,
            false,
        )
        .trim();
        if !g.is_empty() {
            out.push(g);
        }
    }
    out
}
