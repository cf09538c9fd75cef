//! Acceptance criteria, one line per criterion.

use std::time::{Duration, Instant};

use descoord::coordination::{
    check_supck_inclusion, is_conditionally_closed, is_conditionally_controllable,
    is_conditionally_decomposable, supc_triplet, supcc_via_inclusion,
};
use descoord::corpus;
use descoord::fsm::{language_equal, project, EventTable, Generator};
use descoord::oracle::harness::{
    conditional_implies_global, cross_validate_supcc, cross_validate_supcon,
    nonblocking_composition, observer_state_bound, triplet_invariant, HarnessReport, BOUND,
};
use descoord::supervisory::{is_controllable, is_lm_closed, supcon};
use descoord::{Verdict, Witness};

const SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn from_report(r: &HarnessReport, minimum: usize) -> Outcome {
    let enough = r.checked >= minimum;
    let mut detail = format!(
        "{} instances checked (need {minimum}), {} generated, {} violations",
        r.checked, r.generated, r.failures
    );
    for e in &r.examples {
        detail.push_str(&format!("; {e}"));
    }
    outcome(r.passed() && enough, detail)
}

fn word_witness(v: &Verdict, t: &EventTable) -> String {
    match v.witness() {
        Some(Witness::Word(w)) => t.format_word(w),
        Some(w) => format!("{w:?}"),
        None => "none".into(),
    }
}

fn example_one() -> Outcome {
    let ex = corpus::example_one();
    let k = is_conditionally_decomposable(&ex.k, &ex.alphabets, &ex.ek).unwrap();
    let kbar =
        is_conditionally_decomposable(&ex.k.prefix_closure(), &ex.alphabets, &ex.ek).unwrap();
    let w = ex.table.word("a1 b2").unwrap();
    let second = corpus::example_one_second();
    let l = is_conditionally_decomposable(&second.k, &second.alphabets, &second.ek).unwrap();
    let lbar =
        is_conditionally_decomposable(&second.k.prefix_closure(), &second.alphabets, &second.ek)
            .unwrap();
    let pass = k.marked.holds()
        && kbar.marked == Verdict::Fails(Witness::Word(w))
        && lbar.marked.holds()
        && l.marked.fails();
    outcome(
        pass,
        format!(
            "K: {}, closure of K: {} (witness {}), L: {}, closure of L: {}",
            k.marked.holds(),
            kbar.marked.holds(),
            word_witness(&kbar.marked, &ex.table),
            l.marked.holds(),
            lbar.marked.holds()
        ),
    )
}

fn controllability_example() -> Outcome {
    let ex = corpus::controllability_example();
    let p = ex.problem().unwrap();
    let plant = p.global_plant().unwrap();
    let global = is_controllable(p.spec(), &plant).unwrap();
    let cc = is_conditionally_controllable(&p).unwrap();
    let u = ex.table.id("u").unwrap();
    let expected = Verdict::Fails(Witness::Controllability {
        prefix: vec![],
        event: u,
    });
    outcome(
        global.holds() && cc.coordinator == expected,
        format!(
            "controllable: {}, coordinator condition: {}",
            global.holds(),
            cc.coordinator.display(&ex.table)
        ),
    )
}

fn closedness_example() -> Outcome {
    let ex = corpus::closedness_example();
    let p = ex.problem().unwrap();
    let plant = p.global_plant().unwrap();
    let closed = is_lm_closed(p.spec(), &plant).unwrap();
    let cl = is_conditionally_closed(&p).unwrap();
    outcome(
        closed.holds() && cl.coordinator.fails(),
        format!(
            "K Lm(G)-closed: {}, coordinator condition: {}",
            closed.holds(),
            cl.coordinator.display(&ex.table)
        ),
    )
}

fn database() -> Outcome {
    let db = corpus::database();
    let p = db.problem().unwrap();
    let (triplet, supcc) = match supcc_via_inclusion(&p) {
        Ok(x) => x,
        Err(e) => return outcome(false, format!("synthesis stopped: {e}")),
    };
    let inclusion: Vec<bool> = triplet
        .inclusion(&db.ek)
        .iter()
        .map(Verdict::holds)
        .collect();
    let mono = supcon(p.spec(), &p.global_plant().unwrap()).unwrap();
    let eq = language_equal(&supcc, &mono).unwrap();
    let states: Vec<usize> = triplet
        .supc_local
        .iter()
        .map(Generator::num_states)
        .collect();
    let three = states.iter().all(|&n| n == 3);
    outcome(
        inclusion.iter().all(|&b| b) && eq.marked && eq.generated,
        format!(
            "inclusion {inclusion:?}, equals monolithic: {}, local supervisor states {states:?} ({})",
            eq.marked && eq.generated,
            if three { "three each" } else { "reported only" }
        ),
    )
}

fn counterexample() -> Outcome {
    let ex = corpus::inclusion_counterexample();
    let p = ex.problem().unwrap();
    let t = &ex.table;
    let triplet = supc_triplet(&p).unwrap();
    let both = Generator::from_words(t, &["a1", "a2"], &["a1 a2", "a2 a1"])
        .unwrap()
        .prefix_closure();
    let one = Generator::from_words(t, &["a1", "a2"], &["a2 a1"])
        .unwrap()
        .prefix_closure();
    let supck_ok = language_equal(&triplet.supc_k, &both).unwrap().marked;
    let projected_ok = language_equal(&project(&triplet.supc_local[0], &ex.ek), &one)
        .unwrap()
        .marked;
    let v = check_supck_inclusion(&triplet.supc_k, &triplet.supc_local[0], &ex.ek);
    outcome(
        supck_ok && projected_ok && v.fails(),
        format!(
            "supC_k as expected: {supck_ok}, projection of supC_1+k as expected: {projected_ok}, inclusion: {}",
            v.display(t)
        ),
    )
}

fn oracle_supcon() -> Outcome {
    let start = Instant::now();
    let r = cross_validate_supcon(SEED, 200, BOUND);
    let elapsed = start.elapsed();
    let mut o = from_report(&r, 200);
    o.pass &= elapsed < Duration::from_secs(60);
    o.detail
        .push_str(&format!(", {:.2} s", elapsed.as_secs_f64()));
    o
}

/// Inclusion check on cycles of coprime lengths `n` and `n + 1`, where every
/// one of the `n·(n+1)` pairs is reachable. Returns the fitted exponent of
/// runtime against the pair count.
fn complexity() -> Outcome {
    let t = std::sync::Arc::new(EventTable::from_events([("a", true), ("b", true)]).unwrap());
    let a = t.id("a").unwrap();
    let b = t.id("b").unwrap();
    let ek = t.set(&["a"]).unwrap();
    let cycle = |n: usize, alphabet: &[&str], with_b: bool| {
        let mut g = Generator::builder(&t, t.set(alphabet).unwrap());
        for _ in 0..n {
            g.add_state(true);
        }
        for s in 0..n {
            g.add_transition(s, a, (s + 1) % n).unwrap();
            if with_b {
                g.add_transition(s, b, s).unwrap();
            }
        }
        g.build().unwrap()
    };
    let mut points = Vec::new();
    let mut all_hold = true;
    for n in [125usize, 250, 500, 1000, 2000] {
        let k = cycle(n, &["a"], false);
        let local = cycle(n + 1, &["a", "b"], true);
        let best = (0..3)
            .map(|_| {
                let start = Instant::now();
                all_hold &= check_supck_inclusion(&k, &local, &ek).holds();
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        points.push(((n * (n + 1)) as f64, best));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(1e-9).ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = cov / var;
    let timings: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.0}:{:.1}ms", y * 1e3))
        .collect();
    outcome(
        all_hold && (0.8..=1.3).contains(&slope),
        format!("exponent {slope:.3} over [{}]", timings.join(", ")),
    )
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("example one decomposability", Box::new(example_one)),
        ("controllability example", Box::new(controllability_example)),
        ("closedness example", Box::new(closedness_example)),
        ("database transactions", Box::new(database)),
        ("inclusion counterexample", Box::new(counterexample)),
        ("supcon matches the oracle", Box::new(oracle_supcon)),
        (
            "supcc matches the oracle",
            Box::new(|| from_report(&cross_validate_supcc(SEED, 50, BOUND), 50)),
        ),
        (
            "projection of local supremal languages within supC_k",
            Box::new(|| from_report(&triplet_invariant(SEED, 200), 200)),
        ),
        (
            "conditional controllability implies controllability",
            Box::new(|| from_report(&conditional_implies_global(SEED, 100), 100)),
        ),
        (
            "observer state bound",
            Box::new(|| from_report(&observer_state_bound(SEED, 100), 100)),
        ),
        (
            "nonblocking coordinator",
            Box::new(|| from_report(&nonblocking_composition(SEED, 100), 100)),
        ),
        ("inclusion check scaling", Box::new(complexity)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name}: {} [{:.2} s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
