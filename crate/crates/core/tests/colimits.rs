use std::collections::BTreeMap;
use std::sync::Arc;

use multicat::colimits::{
    bounded_pushout_oracle, coend_set, pushout_cat_ff, pushout_multicat_along_e,
    pushout_multicat_along_e_iter, verify_pushout, OracleLimits, Provenance, PushoutResult, Span,
    TableProfunctor,
};
use multicat::constructions::{
    com, counit, discrete, embed_e, embed_functor, full_inclusion, indiscrete, underlying_1,
};
use multicat::map::{Functor, Map};
use multicat::search::{enumerate_functors, find_isomorphism_under};
use multicat::standard::{
    arrow, composable_pair, idempotent_monoid, interval_xy, small_categories, small_multicats,
    split_idempotent, terminal, z2,
};
use multicat::structure::{FiniteCategory, Multicat, Structure};
use multicat::validate::{validate_category, validate_multicat};
use multicat::DEFAULT_BUDGET;

fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

fn constant(objects: usize, set: &[&str]) -> TableProfunctor {
    let mut w = TableProfunctor::default();
    for x in 0..objects {
        for y in 0..objects {
            w.elements
                .insert((x, y), set.iter().map(|s| s.to_string()).collect());
        }
    }
    w
}

#[test]
fn coend_over_discrete_index_is_disjoint_union() {
    let d = discrete(&["a", "b", "c"]);
    let mut w = TableProfunctor::default();
    w.elements.insert((0, 0), vec!["p".into(), "q".into()]);
    w.elements.insert((1, 1), vec!["r".into()]);
    w.elements.insert((0, 1), vec!["ignored".into()]);
    let c = coend_set(&d, &w);
    assert_eq!(c.len(), 3);
}

#[test]
fn coend_over_idempotent_with_equal_reindexings_keeps_both() {
    // both reindexings send p ↦ q, q ↦ q: every relation is q ~ q
    let e = idempotent_monoid();
    let em = e.morphism_index("e").unwrap();
    let mut w = constant(1, &["p", "q"]);
    for side in [&mut w.left, &mut w.right] {
        side.insert((em, "p".into()), "q".into());
        side.insert((em, "q".into()), "q".into());
    }
    assert!(w.is_functorial(&e));
    assert_eq!(coend_set(&e, &w).len(), 2);
}

#[test]
fn coend_over_idempotent_with_one_sided_reindexing_collapses() {
    let e = idempotent_monoid();
    let em = e.morphism_index("e").unwrap();
    let mut w = constant(1, &["p", "q"]);
    w.left.insert((em, "p".into()), "q".into());
    w.left.insert((em, "q".into()), "q".into());
    assert!(w.is_functorial(&e));
    let c = coend_set(&e, &w);
    assert_eq!(c.len(), 1);
    assert_eq!(c.representative(0).1, "p");
}

#[test]
fn coend_over_indiscrete_pair_of_constant_weight() {
    let c = coend_set(&indiscrete(&["x", "y"]), &constant(2, &["s", "t"]));
    assert_eq!(c.len(), 2);
}

fn inclusion(b: FiniteCategory, objects: &[&str]) -> Functor {
    let b = arc(b);
    let objs: Vec<usize> = objects.iter().map(|o| b.object_index(o).unwrap()).collect();
    full_inclusion(&b, &objs)
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

#[test]
fn pushout_along_identity_is_the_other_leg() {
    let c = arc(interval_xy());
    let a = arc(arrow());
    let f = enumerate_functors(&a, &c).unwrap().pop().unwrap();
    let i = Functor::identity(a.clone());
    let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
    assert!(r.commutes(&f, &i));
    assert!(r.object.same_tables(&c));
    let o = bounded_pushout_oracle(&f, &i, OracleLimits::default()).unwrap();
    assert!(o.exact);
    assert!(isomorphic_over(&r, &o));
}

#[test]
fn gluing_an_arrow_onto_a_point() {
    let i = inclusion(arrow(), &["0"]);
    let t = arc(terminal());
    let f = Functor::new(i.source.clone(), t.clone(), vec![0], vec![0]);
    let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
    assert_eq!(r.provenance, Provenance::Formula);
    assert!(validate_category(&r.object).ok());
    assert!(r.commutes(&f, &i));
    assert_eq!((r.object.object_count(), r.object.morphism_count()), (2, 3));
    let o = bounded_pushout_oracle(&f, &i, OracleLimits::default()).unwrap();
    assert!(o.exact);
    assert!(isomorphic_over(&r, &o));
    let span = Span { f, i };
    let targets: Vec<_> = small_categories().into_iter().map(arc).collect();
    let check = verify_pushout(&span, &r, &targets, DEFAULT_BUDGET).unwrap();
    assert!(check.ok(), "{check}");
    assert!(check.cocones > 0);
}

#[test]
fn non_full_first_leg_goes_through_the_oracle() {
    // A = {0, 2} ⊂ [0 → 1 → 2]; f collapses kj onto an identity
    let i = inclusion(composable_pair(), &["0", "2"]);
    let a = i.source.clone();
    let c = arc(arrow());
    let f = enumerate_functors(&a, &c)
        .unwrap()
        .into_iter()
        .find(|g| !g.is_full_faithful())
        .unwrap();
    let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
    assert_eq!(r.provenance, Provenance::Oracle);
    assert!(r.commutes(&f, &i));
    assert!(validate_category(&r.object).ok());
    let o = bounded_pushout_oracle(&f, &i, OracleLimits::default()).unwrap();
    if o.exact && r.exact {
        assert!(isomorphic_over(&r, &o));
    }
}

#[test]
fn formula_leg_is_full_and_faithful() {
    let i = inclusion(interval_xy(), &["x"]);
    let c = arc(split_idempotent());
    for f in enumerate_functors(&i.source, &c).unwrap() {
        let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
        assert!(r.leg_c.is_full_faithful());
        assert!(validate_category(&r.object).ok());
    }
}

/// Spans `C ←f A ↪ B` with `A` a full subcategory of `B` on a proper
/// nonempty set of objects and `f` any functor into `C`.
fn small_spans() -> Vec<(Functor, Functor)> {
    let mut bs: Vec<FiniteCategory> = small_categories();
    bs.push(composable_pair());
    let cs: Vec<Arc<FiniteCategory>> = small_categories().into_iter().map(arc).collect();
    let mut out = Vec::new();
    for b in bs {
        let b = arc(b);
        let n = b.object_count();
        for mask in 1..(1u32 << n) - 1 {
            let objs: Vec<usize> = (0..n).filter(|o| mask & (1 << o) != 0).collect();
            let i = full_inclusion(&b, &objs);
            for c in &cs {
                for f in enumerate_functors(&i.source, c).unwrap() {
                    out.push((f, i.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn formula_agrees_with_oracle_on_small_spans() {
    let mut compared = 0;
    let limits = OracleLimits {
        max_elements: 300,
        max_rounds: 16,
    };
    for (f, i) in small_spans() {
        if !f.is_full_faithful() {
            continue;
        }
        let r = pushout_cat_ff(&f, &i, limits).unwrap();
        assert!(r.commutes(&f, &i));
        assert!(validate_category(&r.object).ok());
        let o = bounded_pushout_oracle(&f, &i, limits).unwrap();
        if !o.exact {
            continue;
        }
        assert!(isomorphic_over(&r, &o), "{:?} / {:?}", f, i);
        compared += 1;
    }
    assert!(compared >= 50, "only {compared} instances");
}

#[test]
fn order_of_new_objects_does_not_matter() {
    // two new objects, added in both orders by renaming them
    let b = composable_pair();
    let i = inclusion(b, &["0"]);
    let t = arc(terminal());
    let f = Functor::new(i.source.clone(), t.clone(), vec![0], vec![0]);
    let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
    let renamed = multicat::standard::category_from(
        "composable'",
        &["0", "b", "a"],
        &[("j", "0", "b"), ("k", "b", "a"), ("kj", "0", "a")],
        &[("k", "j", "kj")],
    );
    let i2 = inclusion(renamed, &["0"]);
    let f2 = Functor::new(i2.source.clone(), t.clone(), vec![0], vec![0]);
    let r2 = pushout_cat_ff(&f2, &i2, OracleLimits::default()).unwrap();
    assert!(multicat::search::are_isomorphic(&r.object, &r2.object).unwrap());
    assert_eq!(r.object.morphism_count(), 6);
}

#[test]
fn oracle_on_discrete_span_glues_objects() {
    let a = arc(discrete(&["a"]));
    let b = arc(discrete(&["b", "c"]));
    let c = arc(discrete(&["d", "e"]));
    let i = Functor::new(a.clone(), b, vec![0], vec![0]);
    let f = Functor::new(a, c, vec![0], vec![0]);
    let o = bounded_pushout_oracle(&f, &i, OracleLimits::default()).unwrap();
    assert!(o.exact);
    assert_eq!(o.object.object_count(), 3);
    assert_eq!(o.object.morphism_count(), 3);
}

#[test]
fn free_product_of_monoids_exhausts_the_oracle() {
    let t = arc(terminal());
    let g = arc(z2());
    let e = arc(idempotent_monoid());
    let f = Functor::new(t.clone(), g.clone(), vec![0], vec![g.identity(0)]);
    let i = Functor::new(t, e.clone(), vec![0], vec![e.identity(0)]);
    let o = bounded_pushout_oracle(
        &f,
        &i,
        OracleLimits {
            max_elements: 60,
            max_rounds: 16,
        },
    )
    .unwrap();
    assert!(!o.exact);
    assert!(o.object.morphism_count() > 4);
}

/// Adds a morphism parallel to `m` whose only composites are unit laws.
fn with_parallel_copy(d: &FiniteCategory, m: &str) -> FiniteCategory {
    let mut b = multicat::tables::TablesBuilder::new("mutant", 1);
    for o in d.objects() {
        b.object(o.clone());
    }
    let mut idx = BTreeMap::new();
    for x in 0..d.morphism_count() {
        let id = if d.is_identity(x) {
            b.identity(d.src(x))
        } else {
            b.morphism(d.morphism_name(x), vec![d.src(x)], d.tgt(x))
        };
        idx.insert(x, id);
    }
    let x = d.morphism_index(m).unwrap();
    b.morphism(format!("{m}2"), vec![d.src(x)], d.tgt(x));
    for ((g, fs), h) in d.comp_table() {
        b.set_comp(idx[g], vec![idx[&fs[0]]], idx[h]);
    }
    FiniteCategory::from_tables(b.build().tables)
}

#[test]
fn verifier_catches_an_extra_free_morphism() {
    let i = inclusion(arrow(), &["0"]);
    let t = arc(terminal());
    let f = Functor::new(i.source.clone(), t.clone(), vec![0], vec![0]);
    let r = pushout_cat_ff(&f, &i, OracleLimits::default()).unwrap();
    let mutant = arc(with_parallel_copy(&r.object, "j"));
    assert!(validate_category(&mutant).ok());
    let relabel = |m: &Functor| {
        let morphisms = m
            .morphisms
            .iter()
            .map(|&x| mutant.morphism_index(r.object.morphism_name(x)).unwrap())
            .collect();
        Map::new(
            m.source.clone(),
            mutant.clone(),
            m.objects.clone(),
            morphisms,
        )
    };
    let cand = PushoutResult {
        object: mutant.clone(),
        leg_b: relabel(&r.leg_b),
        leg_c: relabel(&r.leg_c),
        provenance: Provenance::Formula,
        exact: true,
    };
    let targets: Vec<_> = small_categories().into_iter().map(arc).collect();
    let check = verify_pushout(&Span { f, i }, &cand, &targets, DEFAULT_BUDGET).unwrap();
    assert!(check.commutes);
    assert!(!check.ok());
    assert!(!check.ambiguous.is_empty());
    assert!(check.missing.is_empty());
}

#[test]
fn verifier_catches_an_over_identified_candidate() {
    let i = inclusion(arrow(), &["0"]);
    let t = arc(terminal());
    let f = Functor::new(i.source.clone(), t.clone(), vec![0], vec![0]);
    let collapse = Functor::new(i.target.clone(), t.clone(), vec![0, 0], vec![0; 3]);
    let cand = PushoutResult {
        object: t.clone(),
        leg_b: collapse,
        leg_c: Functor::identity(t.clone()),
        provenance: Provenance::Formula,
        exact: true,
    };
    let targets: Vec<_> = small_categories().into_iter().map(arc).collect();
    let check = verify_pushout(&Span { f, i }, &cand, &targets, DEFAULT_BUDGET).unwrap();
    assert!(check.commutes);
    assert!(!check.missing.is_empty());
}

fn e_span(m: &Arc<Multicat>, i: &Functor) -> Span<Multicat> {
    Span {
        f: counit(m),
        i: embed_functor(i, m.bound()),
    }
}

#[test]
fn pushout_of_e_images_is_e_of_the_pushout() {
    let k = 2;
    let i = inclusion(interval_xy(), &["x"]);
    let m = arc(embed_e(&i.source, k));
    let r = pushout_multicat_along_e(&m, &i).unwrap();
    assert!(validate_multicat(&r.object).ok());
    let eb = arc(embed_e(&i.target, k));
    assert!(multicat::search::are_isomorphic(&r.object, &eb).unwrap());
    let span = e_span(&m, &i);
    assert!(r.commutes(&span.f, &span.i));
}

#[test]
fn new_object_with_no_outgoing_maps() {
    // Com_2 with a new object q receiving one arrow j : * → q
    let k = 2;
    let m = arc(com(k));
    let b = multicat::standard::category_from("b", &["*", "q"], &[("j", "*", "q")], &[]);
    let i = inclusion(b, &["*"]);
    assert!(i.source.same_tables(&underlying_1(&m)));
    let r = pushout_multicat_along_e(&m, &i).unwrap();
    let n = &r.object;
    let rep = validate_multicat(n);
    assert!(rep.ok(), "{rep}");
    let q = n.object_index("q").unwrap();
    for sig in multicat::tables::all_signatures(2, k) {
        let h = n.hom(&sig).len();
        if sig.inputs.contains(&q) {
            assert_eq!(
                h,
                if sig.inputs == [q] && sig.output == q {
                    1
                } else {
                    0
                },
                "{sig:?}"
            );
        } else {
            // N(*^n; *) = Com(n) and N(*^n; q) = B(*, q) × Com(n)
            assert_eq!(h, 1, "{sig:?}");
        }
    }
    assert!(r.leg_c.is_full_faithful());
    let span = e_span(&m, &i);
    assert!(r.commutes(&span.f, &span.i));
    let targets: Vec<_> = small_multicats(k).into_iter().map(arc).collect();
    let check = verify_pushout(&span, &r, &targets, DEFAULT_BUDGET).unwrap();
    assert!(check.ok(), "{check}");
}

#[test]
fn multicat_formula_agrees_with_oracle() {
    let k = 2;
    // `None` stands for E(A) itself
    let cases: Vec<(Option<Multicat>, FiniteCategory, Vec<&str>)> = vec![
        (
            Some(com(k)),
            multicat::standard::category_from("b", &["*", "q"], &[("j", "*", "q")], &[]),
            vec!["*"],
        ),
        (
            Some(com(k)),
            multicat::standard::category_from("b", &["*", "q"], &[("j", "q", "*")], &[]),
            vec!["*"],
        ),
        (Some(com(k)), interval_xy(), vec!["x"]),
        (None, split_idempotent(), vec!["x"]),
        (None, split_idempotent(), vec!["r"]),
    ];
    for (m, b, old) in cases {
        let i = inclusion(b, &old);
        let m = arc(m.unwrap_or_else(|| embed_e(&i.source, k)));
        let i = Functor::new(
            arc(underlying_1(&m)),
            i.target.clone(),
            i.objects.clone(),
            i.morphisms.clone(),
        );
        let r = pushout_multicat_along_e(&m, &i).unwrap();
        let rep = validate_multicat(&r.object);
        assert!(rep.ok(), "{rep}");
        let span = e_span(&m, &i);
        let o = bounded_pushout_oracle(&span.f, &span.i, OracleLimits::default()).unwrap();
        assert!(o.exact);
        assert!(isomorphic_over(&r, &o), "{}", i.target.name());
    }
}

#[test]
fn iterated_multicat_pushout_adds_every_object() {
    let k = 2;
    let m = arc(com(k));
    let b = multicat::standard::category_from(
        "b",
        &["*", "p", "q"],
        &[("j", "*", "p"), ("l", "p", "q"), ("lj", "*", "q")],
        &[("l", "j", "lj")],
    );
    let i = inclusion(b, &["*"]);
    let r = pushout_multicat_along_e_iter(&m, &i).unwrap();
    assert_eq!(r.object.object_count(), 3);
    assert!(validate_multicat(&r.object).ok());
    let span = e_span(&m, &i);
    assert!(r.commutes(&span.f, &span.i));
    assert!(r.leg_c.is_full_faithful());
    let o = bounded_pushout_oracle(&span.f, &span.i, OracleLimits::default()).unwrap();
    assert!(o.exact);
    assert!(isomorphic_over(&r, &o));
}
