use descoord::fsm::{
    compose_all, enumerate_bounded, language_equal, language_subset, minimize, parallel_compose,
    project, project_word, EventSet, Generator,
};
use descoord::oracle::random::{random_generator, random_subset, random_table};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn same(a: &Generator, b: &Generator) -> bool {
    let r = language_equal(a, b).unwrap();
    r.marked && r.generated
}

/// Two generators over random, overlapping alphabets of one table.
fn pair(seed: u64) -> (Generator, Generator, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_table(&mut rng, 4);
    let all = t.all();
    let mut alpha = || loop {
        let a = random_subset(&mut rng, &all, 0.6);
        if !a.is_empty() {
            break a;
        }
    };
    let (e1, e2) = (alpha(), alpha());
    let g1 = random_generator(&mut rng, &t, &e1, 4, 0.5, false);
    let g2 = random_generator(&mut rng, &t, &e2, 4, 0.5, false);
    (g1, g2, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn projection_distributes_over_composition(seed in any::<u64>()) {
        let (g1, g2, mut rng) = pair(seed);
        let union = g1.alphabet().union(g2.alphabet());
        let shared = g1.alphabet().intersection(g2.alphabet());
        let mut kept = shared.clone();
        kept.extend_from(&random_subset(&mut rng, &union, 0.4));
        let lhs = project(&parallel_compose(&g1, &g2).unwrap(), &kept);
        let rhs = parallel_compose(
            &project(&g1, &kept.intersection(g1.alphabet())),
            &project(&g2, &kept.intersection(g2.alphabet())),
        )
        .unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn components_of_projections_contain_the_language(seed in any::<u64>()) {
        let (g1, g2, mut rng) = pair(seed);
        let (e1, e2) = (g1.alphabet().clone(), g2.alphabet().clone());
        let a = random_generator(&mut rng, g1.table(), &e1.union(&e2), 4, 0.5, false);
        let l1 = project(&a, &e1);
        let l2 = project(&a, &e2);
        let composed = parallel_compose(&l1, &l2).unwrap();
        let (marked, generated) = enumerate_bounded(&a, 5);
        for w in &marked.words {
            prop_assert!(l1.accepts(&project_word(w, &e1)));
            prop_assert!(l2.accepts(&project_word(w, &e2)));
            prop_assert!(composed.accepts(w));
        }
        for w in &generated.words {
            prop_assert!(composed.generates(w));
        }
        let rel = language_subset(&a, &composed).unwrap();
        prop_assert!(rel.marked && rel.generated);
    }

    #[test]
    fn nested_projections_compose(seed in any::<u64>()) {
        let (g, _, mut rng) = pair(seed);
        let outer = random_subset(&mut rng, g.alphabet(), 0.7);
        let inner = random_subset(&mut rng, &outer, 0.6);
        prop_assert!(same(&project(&project(&g, &outer), &inner), &project(&g, &inner)));
    }

    #[test]
    fn composition_is_commutative_and_associative(seed in any::<u64>()) {
        let (g1, g2, mut rng) = pair(seed);
        let e3 = random_subset(&mut rng, &g1.table().all(), 0.5);
        let g3 = random_generator(&mut rng, g1.table(), &e3, 3, 0.5, false);
        prop_assert!(same(
            &parallel_compose(&g1, &g2).unwrap(),
            &parallel_compose(&g2, &g1).unwrap()
        ));
        let left = parallel_compose(&parallel_compose(&g1, &g2).unwrap(), &g3).unwrap();
        let right = parallel_compose(&g1, &parallel_compose(&g2, &g3).unwrap()).unwrap();
        prop_assert!(same(&left, &right));
        prop_assert!(same(&left, &compose_all([&g1, &g2, &g3]).unwrap()));
    }

    #[test]
    fn minimize_preserves_languages(seed in any::<u64>()) {
        let (g, _, mut rng) = pair(seed);
        let acyclic = rng.gen_bool(0.5);
        let big = random_generator(&mut rng, g.table(), &g.table().all(), 6, 0.4, acyclic);
        for h in [g, big] {
            let m = minimize(&h);
            prop_assert!(same(&h, &m));
            prop_assert!(m.num_states() <= h.accessible().num_states());
            prop_assert_eq!(minimize(&m).num_states(), m.num_states());
        }
    }

    #[test]
    fn projection_onto_everything_is_identity(seed in any::<u64>()) {
        let (g, _, _) = pair(seed);
        let all: EventSet = g.alphabet().clone();
        prop_assert!(same(&project(&g, &all), &g));
    }
}
