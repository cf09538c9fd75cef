use std::collections::BTreeSet;

use descoord::fsm::{enumerate_bounded, language_equal, parallel_compose, Word};
use descoord::oracle::random::{
    random_generator, random_subset, random_supcon_instance, random_table, RandomParams,
};
use descoord::oracle::{oracle_supcon, prefixes};
use descoord::supervisory::{is_controllable, is_lm_closed, supcon};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn supcon_is_controllable_and_within_spec(seed in any::<u64>()) {
        let inst = random_supcon_instance(&mut rng(seed), &RandomParams::default());
        let s = supcon(&inst.spec, &inst.plant).unwrap();
        prop_assert!(is_controllable(&s, &inst.plant).unwrap().holds());
        let (sm, _) = enumerate_bounded(&s, 6);
        let (km, _) = enumerate_bounded(&inst.spec, 6);
        prop_assert!(sm.words.is_subset(&km.words));
        prop_assert!(s.is_nonblocking());
    }

    #[test]
    fn supcon_is_supremal(seed in any::<u64>()) {
        let inst = random_supcon_instance(&mut rng(seed), &RandomParams::default());
        let s = supcon(&inst.spec, &inst.plant).unwrap();
        let (sm, _) = enumerate_bounded(&s, 6);
        let (k, _) = enumerate_bounded(&inst.spec, 6);
        let (_, l) = enumerate_bounded(&inst.plant, 6);
        let expected = oracle_supcon(&k, &l, &inst.table.uncontrollable());
        prop_assert_eq!(sm.words, expected.words);
    }

    #[test]
    fn oracle_supcon_is_controllable(seed in any::<u64>()) {
        let inst = random_supcon_instance(&mut rng(seed), &RandomParams::default());
        let (k, _) = enumerate_bounded(&inst.spec, 6);
        let (_, l) = enumerate_bounded(&inst.plant, 6);
        let eu = inst.table.uncontrollable();
        let s = oracle_supcon(&k, &l, &eu);
        let closure = prefixes(&s.words);
        for w in &closure {
            for u in eu.iter() {
                let mut wu: Word = w.clone();
                wu.push(u);
                prop_assert!(!l.contains(&wu) || closure.contains(&wu));
            }
        }
    }

    #[test]
    fn oracle_is_bound_stable(seed in any::<u64>()) {
        let inst = random_supcon_instance(&mut rng(seed), &RandomParams::default());
        let eu = inst.table.uncontrollable();
        let at = |bound: usize| {
            let (k, _) = enumerate_bounded(&inst.spec, bound);
            let (_, l) = enumerate_bounded(&inst.plant, bound);
            oracle_supcon(&k, &l, &eu).words
        };
        let base: BTreeSet<Word> = at(6);
        prop_assert_eq!(&base, &at(7));
        prop_assert_eq!(&base, &at(9));
    }

    #[test]
    fn controllability_is_transitive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_table(&mut r, 4);
        let all = t.all();
        let m = random_generator(&mut r, &t, &all, 5, 0.5, false).mark_all();
        let h = random_generator(&mut r, &t, &all, 5, 0.6, false).mark_all();
        let l = supcon(&h, &m).unwrap().prefix_closure();
        let spec = random_generator(&mut r, &t, &all, 4, 0.6, false);
        let k = supcon(&spec, &l).unwrap();
        prop_assert!(is_controllable(&l, &m).unwrap().holds());
        prop_assert!(is_controllable(&k, &l).unwrap().holds());
        prop_assert!(is_controllable(&k, &m).unwrap().holds());
    }

    #[test]
    fn nonconflicting_controllable_parts_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_table(&mut r, 4);
        let all = t.all();
        let e1 = random_subset(&mut r, &all, 0.7);
        let e2 = random_subset(&mut r, &all, 0.7);
        let g1 = random_generator(&mut r, &t, &e1, 3, 0.6, false).mark_all();
        let g2 = random_generator(&mut r, &t, &e2, 3, 0.6, false).mark_all();
        let k1 = supcon(&random_generator(&mut r, &t, &e1, 3, 0.6, false), &g1).unwrap();
        let k2 = supcon(&random_generator(&mut r, &t, &e2, 3, 0.6, false), &g2).unwrap();
        let composed = parallel_compose(&k1, &k2).unwrap();
        let nonconflicting = composed.is_nonblocking();
        if nonconflicting {
            let plant = parallel_compose(&g1, &g2).unwrap();
            prop_assert!(is_controllable(&composed, &plant).unwrap().holds());
        }
    }

    #[test]
    fn supcon_preserves_lm_closedness(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_table(&mut r, 4);
        let all = t.all();
        let g = random_generator(&mut r, &t, &all, 4, 0.5, false);
        let h = random_generator(&mut r, &t, &all, 4, 0.6, false).mark_all();
        // K = L(H) ∩ Lm(G) is Lm(G)-closed
        let k = parallel_compose(&h, &g).unwrap().trim();
        prop_assert!(is_lm_closed(&k, &g).unwrap().holds());
        let s = supcon(&k, &g).unwrap();
        prop_assert!(is_lm_closed(&s, &g).unwrap().holds());
    }

    #[test]
    fn supcon_of_controllable_spec_is_spec(seed in any::<u64>()) {
        let inst = random_supcon_instance(&mut rng(seed), &RandomParams::default());
        let s = supcon(&inst.spec, &inst.plant).unwrap();
        let again = supcon(&s, &inst.plant).unwrap();
        let eq = language_equal(&s, &again).unwrap();
        prop_assert!(eq.marked && eq.generated);
    }
}
