//! Seeded property checks over sampled instances.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use multicat::colimits::{
    bounded_pushout_oracle, pushout_cat_ff, pushout_multicat_along_e_iter, OracleLimits,
    PushoutResult,
};
use multicat::constructions::{
    embed_e, forget, multigraph_tables, restrict_u, sym, tensor_map, underlying_1, ObjectMap,
};
use multicat::karoubi::{is_morita_equivalence, kar_category, kar_functor};
use multicat::modelcheck::{
    generating_i, has_lifting, is_cofibration, is_equivalence, is_multi_equivalence,
    is_trivial_fibration, rlp_failure, squares,
};
use multicat::sample::{single_entry_mutants, Sampler};
use multicat::search::{count_maps, enumerate_maps, find_isomorphism_under, MapSearch};
use multicat::standard::com;
use multicat::validate::{instance_holds, validate_tables_until};
use multicat::{validate_multicat, Map, MultiFunctor, Structure, DEFAULT_BUDGET};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn isomorphic_over<S: Structure>(x: &PushoutResult<S>, y: &PushoutResult<S>) -> bool {
    find_isomorphism_under(
        &x.object,
        &y.object,
        &[(&x.leg_b, &y.leg_b), (&x.leg_c, &y.leg_c)],
        DEFAULT_BUDGET,
    )
    .unwrap()
    .is_some()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn reported_witnesses_fail_on_reevaluation(seed in any::<u64>(), k in 1usize..=3) {
        let m = Sampler::new(seed).multicat(k);
        for x in single_entry_mutants(m.tables()) {
            for v in validate_tables_until(&x.tables, DEFAULT_BUDGET, 8).violations {
                prop_assert!(!instance_holds(&x.tables, &v.instance), "{}: {}", x.description, v);
            }
        }
    }

    #[test]
    fn truncation_preserves_validity(seed in any::<u64>(), k in 1usize..=3) {
        let m = Sampler::new(seed).multicat(k);
        for j in 1..=k {
            prop_assert!(validate_multicat(&m.truncate(j)).ok());
        }
    }

    #[test]
    fn endomaps_are_closed_under_composition(seed in any::<u64>()) {
        let c = Arc::new(Sampler::new(seed).category());
        let maps = enumerate_maps(&c, &c, DEFAULT_BUDGET).unwrap();
        let key = |f: &Map<_>| (f.objects.clone(), f.morphisms.clone());
        let keys: std::collections::BTreeSet<_> = maps.iter().map(key).collect();
        prop_assert!(keys.contains(&key(&Map::identity(c.clone()))));
        for f in maps.iter().take(6) {
            for g in maps.iter().take(6) {
                prop_assert!(keys.contains(&key(&f.then(g))));
            }
        }
    }

    #[test]
    fn e_is_left_adjoint_to_underlying(seed in any::<u64>(), k in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let c = s.category();
        let m = Arc::new(s.multicat(k));
        let lhs = count_maps(&Arc::new(embed_e(&c, k)), &m, DEFAULT_BUDGET).unwrap();
        let rhs = count_maps(&Arc::new(c), &Arc::new(underlying_1(&m)), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sym_is_left_adjoint_to_forgetting_the_action(seed in any::<u64>(), k in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let g = s.multigraph(k);
        let h = s.multicat(k);
        let lhs = MapSearch::new(&multigraph_tables(&sym(&g)), &multigraph_tables(&forget(h.tables(), true))).run().unwrap().len();
        let rhs = MapSearch::new(&multigraph_tables(&g), &multigraph_tables(&forget(h.tables(), false))).run().unwrap().len();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn category_pushout_formula_matches_oracle(seed in any::<u64>()) {
        let (f, i) = Sampler::new(seed).full_span();
        let formula = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
        prop_assert!(formula.commutes(&f, &i));
        prop_assert!(formula.leg_c.is_full_faithful());
        let oracle = bounded_pushout_oracle(&f, &i, OracleLimits::default()).unwrap();
        if oracle.exact {
            prop_assert!(isomorphic_over(&formula, &oracle));
        }
    }

    #[test]
    fn multicat_pushout_formula_matches_oracle(seed in any::<u64>(), k in 1usize..=2) {
        let (m, i) = Sampler::new(seed).extension(k);
        let formula = pushout_multicat_along_e_iter(&m, &i).unwrap();
        prop_assert!(validate_multicat(&formula.object).ok());
        prop_assert!(formula.leg_c.is_full_faithful());
        let e = Arc::new(embed_e(&i.source, k));
        let eb = Arc::new(embed_e(&i.target, k));
        let f = multicat::sample::inclusion_by_name(&e, &m);
        let ei = multicat::sample::inclusion_by_name(&e, &eb);
        let oracle = bounded_pushout_oracle(&f, &ei, OracleLimits::default()).unwrap();
        if oracle.exact {
            prop_assert!(isomorphic_over(&formula, &oracle));
        }
    }

    #[test]
    fn kar_alpha_is_morita_and_kar_is_idempotent(seed in any::<u64>()) {
        let c = Arc::new(Sampler::new(seed).category());
        let k = kar_category(&c);
        prop_assert!(is_morita_equivalence(&k.alpha));
        let kk = kar_category(&k.category);
        prop_assert!(is_equivalence(&kk.alpha));
    }

    #[test]
    fn morita_iff_kar_is_an_equivalence(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let c = Arc::new(s.category());
        let d = Arc::new(s.category());
        let (kc, kd) = (kar_category(&c), kar_category(&d));
        for f in enumerate_maps(&c, &d, DEFAULT_BUDGET).unwrap().iter().take(8) {
            let fk = kar_functor(f, &kc, &kd);
            prop_assert_eq!(is_morita_equivalence(f), is_equivalence(&fk));
        }
        let fk = kar_functor(&kc.alpha, &kc, &kar_category(&kc.category));
        prop_assert!(is_equivalence(&fk));
    }

    #[test]
    fn trivial_fibrations_are_exactly_rlp_i(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let i = generating_i(2);
        let b = Arc::new(s.multicat(2));
        let mut maps = vec![s.trivial_fibration(&b, 3)];
        let a = Arc::new(s.multicat(2));
        maps.extend(s.map(&a, &b, 8, DEFAULT_BUDGET));
        for p in maps {
            let rlp = rlp_failure(&p, &i.maps, DEFAULT_BUDGET).unwrap().is_none();
            prop_assert_eq!(rlp, is_trivial_fibration(&p));
        }
    }

    #[test]
    fn cofibrations_are_exactly_llp_against_object_doubling(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = Arc::new(s.category());
        let b = Arc::new(s.category());
        let Some(f) = s.map(&a, &b, 8, DEFAULT_BUDGET) else { return Ok(()) };
        // u*B → B with every object of B doubled
        let n = b.object_count();
        let domain = (0..2 * n).map(|x| format!("x{x}")).collect();
        let images: Vec<usize> = (0..2 * n).map(|x| x % n).collect();
        let r = restrict_u(&ObjectMap::new(domain, images.clone()), b.tables());
        let p = Map::new(Arc::new(multicat::FiniteCategory::from_tables(r.tables)), b.clone(), images, r.morphisms);
        prop_assert!(is_trivial_fibration(&p));
        let mut llp = true;
        for sq in squares(&f, &p, DEFAULT_BUDGET).unwrap() {
            if has_lifting(&sq, DEFAULT_BUDGET).unwrap().is_empty() {
                llp = false;
                break;
            }
        }
        prop_assert_eq!(llp, is_cofibration(&f));
    }

    #[test]
    fn retracts_of_equivalences_are_equivalences(seed in any::<u64>()) {
        // f is a retract of f ⊗ id_N whenever N has a point Com_K → N
        let mut s = Sampler::new(seed);
        let a = Arc::new(s.multicat(2));
        let b = Arc::new(s.multicat(2));
        let n = Arc::new(s.multicat(2));
        let Some(f) = s.map(&a, &b, 8, DEFAULT_BUDGET) else { return Ok(()) };
        if count_maps(&Arc::new(com(2)), &n, DEFAULT_BUDGET).unwrap() == 0 {
            return Ok(());
        }
        let g = tensor_map(&f, &MultiFunctor::identity(n.clone()));
        prop_assert!(g.problems().is_empty());
        if is_multi_equivalence(&g) {
            prop_assert!(is_multi_equivalence(&f));
        }
        if is_trivial_fibration(&g) {
            prop_assert!(is_trivial_fibration(&f));
        }
    }
}
