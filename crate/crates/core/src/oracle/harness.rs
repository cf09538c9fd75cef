//! Cross-validation of the automaton algorithms against the oracle, and
//! randomized checks of structural properties.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coordination::{
    check_projection_within_supck, is_conditionally_controllable, is_conditionally_decomposable,
    shared_events, supc_triplet, supcc_via_inclusion, CoordinationError, CoordinationProblem,
};
use crate::fsm::{
    compose_all, enumerate_bounded, language_subset, minimize, project, BoundedLanguage,
    EventTable, ProjectionSpec,
};
use crate::nonblocking::{nonblocking_coordinator, verify_nonblocking};
use crate::observer::is_observer;
use crate::supervisory::{is_controllable, supcon};

use super::random::{
    random_languages, random_observer_instance, random_problem, random_supcon_instance,
    RandomParams,
};
use super::{oracle_check_observer_acyclic, oracle_supcc, oracle_supcon, OracleInstance};

/// Default length bound of the enumerations.
pub const BOUND: usize = 6;

/// Smallest bound exceeding every word of a random specification (acyclic
/// with at most five states).
pub const MIN_BOUND: usize = 5;

const KEPT_FAILURES: usize = 5;

/// Outcome of one randomized check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessReport {
    pub name: &'static str,
    /// Instances drawn.
    pub generated: usize,
    /// Instances on which the check was applicable and evaluated.
    pub checked: usize,
    pub failures: usize,
    /// Descriptions of the first few failures.
    pub examples: Vec<String>,
}

impl HarnessReport {
    fn new(name: &'static str) -> Self {
        HarnessReport {
            name,
            generated: 0,
            checked: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < KEPT_FAILURES {
            self.examples.push(what);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl std::fmt::Display for HarnessReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} checked of {} generated, {} failures",
            self.name, self.checked, self.generated, self.failures
        )?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Cap on draws for checks that only apply to some instances.
fn attempts(count: usize) -> usize {
    count.saturating_mul(200).max(1000)
}

fn describe(t: &EventTable, l: &BoundedLanguage) -> String {
    let words: Vec<String> = l
        .words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".into()
            } else {
                t.format_word(w)
            }
        })
        .collect();
    format!("{{{}}}", words.join(", "))
}

/// `supcon` against `oracle_supcon` on random cyclic plants with acyclic
/// specifications.
pub fn cross_validate_supcon(seed: u64, count: usize, bound: usize) -> HarnessReport {
    assert!(bound >= MIN_BOUND, "bound below {MIN_BOUND}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("supcon vs oracle");
    for _ in 0..count {
        let inst = random_supcon_instance(&mut rng, &params);
        r.generated += 1;
        let result = match supcon(&inst.spec, &inst.plant) {
            Ok(g) => enumerate_bounded(&g, bound).0,
            Err(e) => {
                r.fail(format!("supcon error: {e}"));
                continue;
            }
        };
        let k = enumerate_bounded(&inst.spec, bound).0;
        let l = enumerate_bounded(&inst.plant, bound).1;
        let expected = oracle_supcon(&k, &l, &inst.table.uncontrollable());
        r.checked += 1;
        if result.words != expected.words {
            r.fail(format!(
                "K = {}: automaton {} oracle {}",
                describe(&inst.table, &k),
                describe(&inst.table, &result),
                describe(&inst.table, &expected)
            ));
        }
    }
    r
}

/// `supcc_via_inclusion` against `oracle_supcc` until `count` instances satisfy
/// the hypotheses of the synthesis.
pub fn cross_validate_supcc(seed: u64, count: usize, bound: usize) -> HarnessReport {
    assert!(bound >= MIN_BOUND, "bound below {MIN_BOUND}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("supcc via inclusion vs oracle");
    for _ in 0..attempts(count) {
        if r.checked >= count {
            break;
        }
        r.generated += 1;
        let Some(p) = random_problem(&mut rng, &params) else {
            continue;
        };
        let Ok(inst) = OracleInstance::from_problem(&p, bound) else {
            continue;
        };
        let Ok(expected) = oracle_supcc(&inst) else {
            continue;
        };
        let result = match supcc_via_inclusion(&p) {
            Ok((_, g)) => enumerate_bounded(&g, bound).0,
            Err(CoordinationError::PreconditionFailed { .. }) => continue,
            Err(e) => {
                r.fail(format!("synthesis error: {e}"));
                continue;
            }
        };
        r.checked += 1;
        if result.words != expected.words {
            r.fail(format!(
                "K = {}: automaton {} oracle {}",
                describe(&inst.table, &inst.spec),
                describe(&inst.table, &result),
                describe(&inst.table, &expected)
            ));
        }
    }
    r
}

/// `is_observer` against `oracle_check_observer_acyclic` on acyclic
/// generators.
pub fn cross_validate_observer(seed: u64, count: usize, bound: usize) -> HarnessReport {
    assert!(bound >= MIN_BOUND, "bound below {MIN_BOUND}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("observer vs oracle");
    for _ in 0..count {
        let (g, p) = random_observer_instance(&mut rng, &params, true);
        r.generated += 1;
        let expected = match oracle_check_observer_acyclic(&g, &p) {
            Ok(b) => b,
            Err(e) => {
                r.fail(format!("oracle error: {e}"));
                continue;
            }
        };
        r.checked += 1;
        let got = is_observer(&g, &p).holds();
        if got != expected {
            let t = g.table();
            let (lm, _) = enumerate_bounded(&g, bound);
            r.fail(format!(
                "Lm = {} kept {}: automaton {got} oracle {expected}",
                describe(t, &lm),
                t.format_set(&p.kept)
            ));
        }
    }
    r
}

/// `P_k(supC_{i+k}) ⊆ supC_k` on random problems, checked by the product
/// construction and by explicit projection.
pub fn triplet_invariant(seed: u64, count: usize) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("projection of local supremal languages within supC_k");
    for _ in 0..attempts(count) {
        if r.checked >= count {
            break;
        }
        r.generated += 1;
        let Some(p) = random_problem(&mut rng, &params) else {
            continue;
        };
        let ek = p.coordinator_events();
        let t = match std::panic::catch_unwind(|| supc_triplet(&p)) {
            Ok(Ok(t)) => t,
            Ok(Err(e)) => {
                r.fail(format!("triplet error: {e}"));
                continue;
            }
            Err(_) => {
                r.fail("triplet assertion failed".into());
                continue;
            }
        };
        r.checked += 1;
        for (i, s) in t.supc_local.iter().enumerate() {
            let by_product = check_projection_within_supck(s, &t.supc_k, ek);
            let by_projection = language_subset(&project(s, ek), &t.supc_k)
                .map(|rel| rel.marked)
                .unwrap_or(false);
            if !by_product.holds() || !by_projection {
                r.fail(format!("subsystem {}: {by_product:?}", i + 1));
            }
        }
    }
    r
}

/// Conditionally controllable and conditionally decomposable languages
/// are controllable with respect to the global plant. Checked on the random
/// specification and on the synthesized result when it exists.
pub fn conditional_implies_global(seed: u64, count: usize) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("conditional controllability implies controllability");
    for _ in 0..attempts(count) {
        if r.checked >= count {
            break;
        }
        r.generated += 1;
        let Some(p) = random_problem(&mut rng, &params) else {
            continue;
        };
        let mut candidates = vec![p.clone()];
        if let Ok((_, g)) = supcc_via_inclusion(&p) {
            if let Ok(q) = p.with_spec(&g) {
                candidates.push(q);
            }
        }
        for q in candidates {
            match check_conditional_implies_global(&q) {
                Ok(None) => {}
                Ok(Some(true)) => r.checked += 1,
                Ok(Some(false)) => {
                    r.checked += 1;
                    r.fail(format!(
                        "K with {} states is not controllable",
                        q.spec().num_states()
                    ));
                }
                Err(e) => r.fail(format!("error: {e}")),
            }
        }
    }
    r
}

/// `None` when the hypotheses fail.
fn check_conditional_implies_global(
    p: &CoordinationProblem,
) -> Result<Option<bool>, CoordinationError> {
    let d = is_conditionally_decomposable(p.spec(), &p.alphabets(), p.coordinator_events())?;
    if !d.holds() || !is_conditionally_controllable(p)?.holds() {
        return Ok(None);
    }
    let plant = p.global_plant()?;
    Ok(Some(is_controllable(p.spec(), &plant)?.holds()))
}

/// Whenever the projection is an observer, the minimal generator of the
/// projected language has no more states than the source.
pub fn observer_state_bound(seed: u64, count: usize) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let mut r = HarnessReport::new("observer projections do not grow");
    for _ in 0..attempts(count) {
        if r.checked >= count {
            break;
        }
        r.generated += 1;
        let (g, p) = random_observer_instance(&mut rng, &params, false);
        if !is_observer(&g, &p).holds() {
            continue;
        }
        r.checked += 1;
        let projected = minimize(&project(&g, &p.kept));
        if projected.num_states() > g.num_states() {
            r.fail(format!(
                "{} states project to {}",
                g.num_states(),
                projected.num_states()
            ));
        }
    }
    r
}

/// Languages with a coordinator built over an extension of the shared
/// events making every projection an observer are nonconflicting.
pub fn nonblocking_composition(seed: u64, count: usize) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams {
        max_states: 4,
        ..RandomParams::default()
    };
    let mut r = HarnessReport::new("coordinator makes the composition nonblocking");
    for _ in 0..count {
        r.generated += 1;
        let langs = random_languages(&mut rng, &params);
        let shared = shared_events(&langs);
        let (events, c) = match nonblocking_coordinator(&langs, &shared) {
            Ok(x) => x,
            Err(e) => {
                r.fail(format!("coordinator error: {e}"));
                continue;
            }
        };
        r.checked += 1;
        match verify_nonblocking(&langs, &c, &ProjectionSpec::new(events)) {
            Ok(true) => {}
            Ok(false) => {
                let blocking = compose_all(langs.iter().chain(std::iter::once(&c)))
                    .map(|g| !g.is_nonblocking())
                    .unwrap_or(true);
                r.fail(format!(
                    "{} languages, blocking composition: {blocking}",
                    langs.len()
                ));
            }
            Err(e) => r.fail(format!("precondition: {e}")),
        }
    }
    r
}

/// The three oracle cross-validations.
pub fn run_cross_validation(seed: u64, count: usize, bound: usize) -> Vec<HarnessReport> {
    vec![
        cross_validate_supcon(seed, count, bound),
        cross_validate_supcc(seed, count, bound),
        cross_validate_observer(seed, count, bound),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for r in run_cross_validation(11, 20, BOUND) {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn properties_hold_on_small_runs() {
        for r in [
            triplet_invariant(5, 10),
            conditional_implies_global(5, 10),
            observer_state_bound(5, 10),
            nonblocking_composition(5, 10),
        ] {
            assert!(r.passed(), "{r}");
        }
    }
}
