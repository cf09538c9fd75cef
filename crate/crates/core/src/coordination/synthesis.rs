//! Supervisor synthesis: the supremal controllable triplet, the inclusion
//! test, and the resulting supremal conditionally controllable language.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::fsm::{
    compose_all, language_diff, language_subset, minimize, parallel_compose, project, EventId,
    EventSet, FsmError, Generator, ProjectionSpec, SilentClosure, StateId,
};
use crate::observer::{is_lcc, is_observer_generated};
use crate::supervisory::supcon;
use crate::{Verdict, Witness};

use super::conditions::{is_conditionally_closed, is_conditionally_controllable};
use super::decompose::{is_conditionally_decomposable, is_conditionally_independent, shortlex_min};
use super::{CoordinationError, CoordinationProblem};

/// `supC_k` and one `supC_{i+k}` per subsystem, all minimized.
#[derive(Clone, Debug)]
pub struct SupCTriplet {
    pub supc_k: Generator,
    pub supc_local: Vec<Generator>,
}

impl SupCTriplet {
    /// [`check_supck_inclusion`] for every subsystem.
    pub fn inclusion(&self, ek: &EventSet) -> Vec<Verdict> {
        self.supc_local
            .par_iter()
            .map(|s| check_supck_inclusion(&self.supc_k, s, ek))
            .collect()
    }
}

/// `supC_k = supC(P_k(K), L(G_k))` and, for each subsystem,
/// `supC_{i+k} = supC(P_{i+k}(K), L(G_i) ∥ closure(supC_k))`.
///
/// The local supremal languages are independent of each other and are
/// computed in parallel. `P_k(supC_{i+k}) ⊆ supC_k` is asserted on the
/// result.
pub fn supc_triplet(problem: &CoordinationProblem) -> Result<SupCTriplet, FsmError> {
    let k = problem.spec();
    let ek = problem.coordinator_events();
    let supc_k = supcon(&project(k, ek), problem.coordinator())?;
    let closed = supc_k.prefix_closure();
    let supc_local = (0..problem.plants().len())
        .into_par_iter()
        .map(|i| {
            let plant = parallel_compose(&problem.plants()[i], &closed)?;
            supcon(&project(k, &problem.local_alphabet(i)), &plant)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for s in &supc_local {
        let v = check_projection_within_supck(s, &supc_k, ek);
        assert!(
            v.holds(),
            "projection of a local supremal language escapes supC_k: {v:?}"
        );
    }
    Ok(SupCTriplet { supc_k, supc_local })
}

/// Decides `P_k(Lm(supc_local)) ⊆ Lm(supc_k)`.
///
/// Product of `supc_local`, read as a nondeterministic automaton in which
/// the erased events are silent, with the completed automaton of `supc_k`;
/// the inclusion fails iff a pair with a marked first component and a
/// non-accepting second component is reachable. `O(n·n_i)` pairs. The
/// witness is a projected word.
pub fn check_projection_within_supck(
    supc_local: &Generator,
    supc_k: &Generator,
    ek: &EventSet,
) -> Verdict {
    let Some(x0) = supc_local.initial() else {
        return Verdict::Holds;
    };
    let n = supc_k.num_states();
    let sink = n;
    let q0 = supc_k.initial().unwrap_or(sink);
    let key = |x: StateId, q: StateId| x * (n + 1) + q;
    let mut parent: Vec<Option<(usize, Option<EventId>)>> =
        vec![None; supc_local.num_states() * (n + 1)];
    let mut seen = vec![false; parent.len()];
    seen[key(x0, q0)] = true;
    let mut queue = VecDeque::from([(x0, q0)]);
    while let Some((x, q)) = queue.pop_front() {
        if supc_local.is_marked(x) && (q == sink || !supc_k.is_marked(q)) {
            let mut word = Vec::new();
            let mut cur = key(x, q);
            while let Some((p, e)) = parent[cur] {
                word.extend(e);
                cur = p;
            }
            word.reverse();
            return Verdict::Fails(Witness::Word(word));
        }
        for &(e, x2) in supc_local.transitions(x) {
            let (q2, label) = if ek.contains(e) {
                let q2 = if q == sink {
                    sink
                } else {
                    supc_k.successor(q, e).unwrap_or(sink)
                };
                (q2, Some(e))
            } else {
                (q, None)
            };
            let k2 = key(x2, q2);
            if !seen[k2] {
                seen[k2] = true;
                parent[k2] = Some((key(x, q), label));
                queue.push_back((x2, q2));
            }
        }
    }
    Verdict::Holds
}

/// Decides `Lm(supc_k) ⊆ P_k(Lm(supc_local))`.
///
/// Breadth-first search over pairs of a `supc_k` state and a silent-closed
/// subset of `supc_local` states, built on the fly and interned; subset
/// successors are memoized, so the work is linear in the number of
/// reachable pairs. When the projection is deterministic up to silent
/// moves that number is at most `n·n_i`.
///
/// The witness is the shortlex-first word of `supC_k` that is not a
/// projection of a word of `supC_{i+k}`.
pub fn check_supck_inclusion(supc_k: &Generator, supc_local: &Generator, ek: &EventSet) -> Verdict {
    let Some(q0) = supc_k.initial() else {
        return Verdict::Holds;
    };
    let local = supc_local.trim();
    let n = supc_k.num_states();
    let mut subsets = Subsets::new(&local, ek);
    let start = match local.initial() {
        Some(x0) => subsets.intern(subsets.closure.close(std::iter::once(x0))),
        None => {
            let w = supc_k.shortest_completion(q0).expect("supC_k is trim");
            return Verdict::Fails(Witness::Word(w));
        }
    };
    // per subset: parent link of each supc_k state, None when unvisited
    type Link = Option<(usize, StateId, EventId)>;
    let mut visited: Vec<Vec<Option<Link>>> = Vec::new();
    let mark = |visited: &mut Vec<Vec<Option<Link>>>, s: usize, q: StateId, link: Link| {
        if visited.len() <= s {
            visited.resize_with(s + 1, Vec::new);
        }
        if visited[s].is_empty() {
            visited[s] = vec![None; n];
        }
        if visited[s][q].is_some() {
            return false;
        }
        visited[s][q] = Some(link);
        true
    };
    let path = |visited: &Vec<Vec<Option<Link>>>, mut s: usize, mut q: StateId| {
        let mut w = Vec::new();
        while let Some(Some((ps, pq, e))) = visited[s][q] {
            w.push(e);
            s = ps;
            q = pq;
        }
        w.reverse();
        w
    };
    mark(&mut visited, start, q0, None);
    let mut queue = VecDeque::from([(start, q0)]);
    while let Some((s, q)) = queue.pop_front() {
        if supc_k.is_marked(q) && !subsets.marked[s] {
            return Verdict::Fails(Witness::Word(path(&visited, s, q)));
        }
        for &(e, q2) in supc_k.transitions(q) {
            match subsets.step(s, e) {
                Some(s2) => {
                    if mark(&mut visited, s2, q2, Some((s, q, e))) {
                        queue.push_back((s2, q2));
                    }
                }
                None => {
                    let mut w = path(&visited, s, q);
                    w.push(e);
                    w.extend(supc_k.shortest_completion(q2).expect("supC_k is trim"));
                    return Verdict::Fails(Witness::Word(w));
                }
            }
        }
    }
    Verdict::Holds
}

/// Interned silent-closed subsets with memoized successors.
struct Subsets<'a> {
    g: &'a Generator,
    ek: &'a EventSet,
    closure: SilentClosure<'a>,
    index: HashMap<Vec<StateId>, usize>,
    sets: Vec<Vec<StateId>>,
    marked: Vec<bool>,
    next: HashMap<(usize, EventId), Option<usize>>,
}

impl<'a> Subsets<'a> {
    fn new(g: &'a Generator, ek: &'a EventSet) -> Self {
        Subsets {
            g,
            ek,
            closure: SilentClosure::new(g, ek),
            index: HashMap::new(),
            sets: Vec::new(),
            marked: Vec::new(),
            next: HashMap::new(),
        }
    }

    fn intern(&mut self, set: Vec<StateId>) -> usize {
        if let Some(&i) = self.index.get(&set) {
            return i;
        }
        let i = self.sets.len();
        self.marked.push(set.iter().any(|&x| self.g.is_marked(x)));
        self.index.insert(set.clone(), i);
        self.sets.push(set);
        i
    }

    fn step(&mut self, s: usize, e: EventId) -> Option<usize> {
        if let Some(&r) = self.next.get(&(s, e)) {
            return r;
        }
        let r = if self.ek.contains(e) {
            let succ: Vec<StateId> = self.sets[s]
                .iter()
                .filter_map(|&x| self.g.successor(x, e))
                .collect();
            (!succ.is_empty()).then(|| {
                let closed = self.closure.close(succ.into_iter());
                self.intern(closed)
            })
        } else {
            None
        };
        self.next.insert((s, e), r);
        r
    }
}

/// Result of the synthesis for the supremal conditionally controllable
/// language when the inclusion test succeeds.
pub fn supcc_via_inclusion(
    problem: &CoordinationProblem,
) -> Result<(SupCTriplet, Generator), CoordinationError> {
    let d = is_conditionally_decomposable(
        problem.spec(),
        &problem.alphabets(),
        problem.coordinator_events(),
    )?;
    require(d.marked, "specification is conditionally decomposable")?;
    require(
        d.closed,
        "closure of the specification is conditionally decomposable",
    )?;
    let triplet = supc_triplet(problem)?;
    for (i, v) in triplet
        .inclusion(problem.coordinator_events())
        .into_iter()
        .enumerate()
    {
        require(
            v,
            &format!("supC_k is included in P_k(supC_{{{}+k}})", i + 1),
        )?;
    }
    let supcc = minimize(&compose_all(&triplet.supc_local)?);
    Ok((triplet, supcc))
}

fn require(v: Verdict, condition: &str) -> Result<(), CoordinationError> {
    match v {
        Verdict::Holds => Ok(()),
        Verdict::Fails(w) => Err(CoordinationError::PreconditionFailed {
            condition: condition.to_string(),
            witness: Some(w),
        }),
        Verdict::NotApplicable(why) => Err(CoordinationError::PreconditionFailed {
            condition: format!("{condition} ({why})"),
            witness: None,
        }),
    }
}

fn condition(v: Verdict, condition: &str) -> Result<(), CoordinationError> {
    match v {
        Verdict::Holds => Ok(()),
        other => Err(CoordinationError::ConditionFailed {
            condition: condition.to_string(),
            witness: other.witness().cloned(),
        }),
    }
}

/// `S_k` and one `S_i` per subsystem, as trim generators.
#[derive(Clone, Debug)]
pub struct Supervisors {
    pub coordinator: Generator,
    pub local: Vec<Generator>,
}

#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub coordinator_events: EventSet,
    pub coordinator: Generator,
    pub triplet: SupCTriplet,
    pub verdicts: Vec<(String, Verdict)>,
    /// Present iff the specification is conditionally controllable and
    /// conditionally closed.
    pub supervisors: Option<Supervisors>,
    /// Closed-loop system `∥_i S_i ∥ G_i ∥ S_k ∥ G_k`, minimized.
    pub closed_loop: Option<Generator>,
}

/// Supervisors achieving exactly the specification, when they exist.
///
/// Conditional independence and conditional decomposability of `K` and
/// `K̄` are hard requirements, as is `K ⊆ Lm(G)`; the latter is checked per
/// subsystem on `P_{i+k}(K) ⊆ Lm(G_i ∥ G_k)`, which is equivalent once `K`
/// is conditionally decomposable. Conditional controllability and
/// closedness are reported as verdicts; supervisors are emitted only when
/// all of them hold, and the closed loop is then checked against `K` and
/// `K̄`.
pub fn synthesize_supervisors(
    problem: &CoordinationProblem,
) -> Result<SynthesisReport, CoordinationError> {
    let k = problem.spec();
    let ek = problem.coordinator_events();
    let mut verdicts = Vec::new();
    let ind = is_conditionally_independent(problem.plants(), problem.coordinator());
    verdicts.push(("conditional independence".to_string(), ind.clone()));
    condition(ind, "conditional independence")?;
    let d = is_conditionally_decomposable(k, &problem.alphabets(), ek)?;
    verdicts.push((
        "decomposability of the specification".into(),
        d.marked.clone(),
    ));
    verdicts.push(("decomposability of its closure".into(), d.closed.clone()));
    condition(d.marked, "decomposability of the specification")?;
    condition(d.closed, "decomposability of its closure")?;
    for (i, g) in problem.plants().iter().enumerate() {
        let local = project(k, &problem.local_alphabet(i));
        let plant = parallel_compose(g, problem.coordinator())?;
        if !language_subset(&local, &plant)?.marked {
            let w = language_diff(&local, &plant)?
                .marked_left_only
                .unwrap_or_default();
            return Err(CoordinationError::SpecNotInPlant {
                subsystem: i + 1,
                word: problem.table().format_word(&w),
            });
        }
    }
    let cc = is_conditionally_controllable(problem)?;
    let cl = is_conditionally_closed(problem)?;
    verdicts.extend(cc.named("controllability"));
    verdicts.extend(cl.named("closedness"));
    let triplet = supc_triplet(problem)?;
    let (supervisors, closed_loop) = if cc.holds() && cl.holds() {
        let sk = project(k, ek).trim();
        let local: Vec<Generator> = (0..problem.plants().len())
            .map(|i| project(k, &problem.local_alphabet(i)).trim())
            .collect();
        let parts: Vec<&Generator> = local
            .iter()
            .chain(problem.plants())
            .chain([&sk, problem.coordinator()])
            .collect();
        let closed_loop = minimize(&compose_all(parts)?);
        let d = language_diff(&closed_loop, k)?;
        verdicts.push((
            "closed loop marks the specification".into(),
            Verdict::from_word(shortlex_min(d.marked_left_only, d.marked_right_only)),
        ));
        let d = language_diff(&closed_loop, &k.prefix_closure())?;
        verdicts.push((
            "closed loop generates the closure".into(),
            Verdict::from_word(shortlex_min(d.generated_left_only, d.generated_right_only)),
        ));
        (
            Some(Supervisors {
                coordinator: sk,
                local,
            }),
            Some(closed_loop),
        )
    } else {
        (None, None)
    };
    Ok(SynthesisReport {
        coordinator_events: ek.clone(),
        coordinator: problem.coordinator().clone(),
        triplet,
        verdicts,
        supervisors,
        closed_loop,
    })
}

/// Hypotheses of the prefix-closed case: `K` prefix-closed and conditionally
/// decomposable, and for every subsystem the projection `P_k` from
/// `E_i ∪ E_k` is an observer and LCC for the inverse projection of `L(G_i)`.
fn prefix_closed_preconditions(problem: &CoordinationProblem) -> Result<(), CoordinationError> {
    let k = problem.spec();
    let ek = problem.coordinator_events();
    let closure = k.prefix_closure();
    let diff = language_diff(&closure, k)?;
    require(
        Verdict::from_word(diff.marked_left_only),
        "specification is prefix-closed",
    )?;
    let d = is_conditionally_decomposable(k, &problem.alphabets(), ek)?;
    require(d.marked, "specification is conditionally decomposable")?;
    let kept = ProjectionSpec::new(ek.clone());
    for (i, g) in problem.plants().iter().enumerate() {
        let lifted = g.accessible().mark_all().selfloop(ek);
        require(
            is_observer_generated(&lifted, &kept),
            &format!("P_k is an observer for the lifted subsystem {}", i + 1),
        )?;
        require(
            is_lcc(&lifted, &kept),
            &format!("P_k is LCC for the lifted subsystem {}", i + 1),
        )?;
    }
    Ok(())
}

/// Supremal conditionally controllable sublanguage of a prefix-closed
/// specification, under the observer and LCC hypotheses (checked).
pub fn prefix_closed_supcc(problem: &CoordinationProblem) -> Result<Generator, CoordinationError> {
    prefix_closed_preconditions(problem)?;
    let triplet = supc_triplet(problem)?;
    Ok(minimize(&compose_all(&triplet.supc_local)?))
}

/// Compares `result` with the monolithic `supC(K, L)` when the additional
/// hypotheses of the optimality result hold: the prefix-closed hypotheses,
/// `L(G_k) ⊆ P_k(L)`, and `P_{i+k}` LCC for `L` for every subsystem. The
/// latter needs the global plant `L`. If a hypothesis fails the verdict is
/// not applicable and no equality is claimed.
pub fn verify_optimality(
    problem: &CoordinationProblem,
    result: &Generator,
) -> Result<Verdict, CoordinationError> {
    if let Err(e) = prefix_closed_preconditions(problem) {
        return Ok(Verdict::NotApplicable(e.to_string()));
    }
    let ek = problem.coordinator_events();
    let plant = problem.global_plant()?.accessible().mark_all();
    let pl = project(&plant, ek);
    if !language_subset(problem.coordinator(), &pl)?.generated {
        return Ok(Verdict::NotApplicable(
            "L(G_k) is not included in P_k(L)".into(),
        ));
    }
    for i in 0..problem.plants().len() {
        let kept = ProjectionSpec::new(problem.local_alphabet(i));
        if !is_lcc(&plant, &kept).holds() {
            return Ok(Verdict::NotApplicable(format!(
                "P_{{{}+k}} is not LCC for L",
                i + 1
            )));
        }
    }
    let mono = supcon(problem.spec(), &plant)?;
    let d = language_diff(result, &mono)?;
    Ok(Verdict::from_word(shortlex_min(
        d.marked_left_only,
        d.marked_right_only,
    )))
}

/// Words used by tests to build expected languages.
#[cfg(test)]
fn words(t: &crate::fsm::EventTable, ws: &[&str]) -> Vec<crate::fsm::Word> {
    ws.iter().map(|w| t.word(w).unwrap()).collect()
}
