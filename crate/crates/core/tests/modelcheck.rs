use std::sync::Arc;

use multicat::colimits::OracleLimits;
use multicat::constructions::embed_functor;
use multicat::modelcheck::*;
use multicat::sample::Sampler;
use multicat::search::{enumerate_functors, enumerate_multifunctors};
use multicat::standard::{arrow, com, interval_xy, small_categories, terminal};
use multicat::{Functor, MultiFunctor, DEFAULT_BUDGET};

#[test]
fn generating_set_sizes() {
    for k in 1..=3 {
        let i = generating_i(k);
        assert_eq!(i.maps.len(), 2 * (k + 1) + 1);
        assert_eq!(i.names.len(), i.maps.len());
        assert!(i
            .maps
            .iter()
            .all(|m| m.problems().is_empty() && is_cofibration(m)));
        let j = generating_j(k);
        assert_eq!(j.maps.len(), 1);
        assert!(is_cofibration(&j.maps[0]) && is_multi_equivalence(&j.maps[0]));
    }
}

#[test]
fn delta_y_is_an_equivalence_but_not_an_isofibration() {
    let d = delta_y();
    assert!(is_equivalence(&d));
    assert!(!is_isofibration(&d));
    assert!(is_cofibration(&d));
    assert!(!is_trivial_fibration(&d));
}

#[test]
fn collapsing_the_interval_is_a_trivial_fibration() {
    let xy = Arc::new(interval_xy());
    let t = Arc::new(terminal());
    let p = Functor::new(
        xy.clone(),
        t.clone(),
        vec![0, 0],
        vec![0; xy.morphism_count()],
    );
    assert!(p.problems().is_empty());
    assert!(is_trivial_fibration(&p));
    assert!(is_isofibration(&p));
    let a = Arc::new(arrow());
    let q = Functor::new(a.clone(), t, vec![0, 0], vec![0; a.morphism_count()]);
    assert!(!is_equivalence(&q));
    assert!(!is_trivial_fibration(&q));
}

#[test]
fn sampled_trivial_fibrations_lift_against_i() {
    let mut s = Sampler::new(21);
    let i = generating_i(2);
    for _ in 0..8 {
        let b = Arc::new(s.multicat(2));
        let p = s.trivial_fibration(&b, 3);
        assert!(p.problems().is_empty());
        assert!(is_trivial_fibration(&p));
        assert!(is_multi_fibration(&p) && is_multi_equivalence(&p));
        assert!(rlp_failure(&p, &i.maps, DEFAULT_BUDGET).unwrap().is_none());
    }
}

#[test]
fn lifting_squares_commute_and_lifts_solve_them() {
    let j = generating_j(2).maps[0].clone();
    let m = Arc::new(multicat::constructions::embed_e(&interval_xy(), 2));
    let p = MultiFunctor::identity(m.clone());
    for sq in squares(&j, &p, DEFAULT_BUDGET).unwrap() {
        assert!(sq.commutes());
        for l in has_lifting(&sq, DEFAULT_BUDGET).unwrap() {
            let (a, b) = (j.then(&l), l.then(&p));
            assert_eq!(a.morphisms, sq.top.morphisms);
            assert_eq!(b.morphisms, sq.bottom.morphisms);
        }
    }
}

#[test]
fn a_non_fibration_fails_rlp_j() {
    // E(delta_y) itself: the square with identity bottom has no lift
    let j = generating_j(2);
    let f = j.maps[0].clone();
    assert!(!is_multi_fibration(&f));
    assert!(rlp_failure(&f, &j.maps, DEFAULT_BUDGET).unwrap().is_some());
}

#[test]
fn equivalences_satisfy_two_out_of_three() {
    let cats: Vec<_> = small_categories().into_iter().map(Arc::new).collect();
    let mut checked = 0;
    for a in &cats {
        for b in &cats {
            let fs = enumerate_functors(a, b).unwrap();
            for c in &cats {
                let gs = enumerate_functors(b, c).unwrap();
                for f in fs.iter().take(4) {
                    for g in gs.iter().take(4) {
                        let gf = f.then(g);
                        let n = [is_equivalence(f), is_equivalence(g), is_equivalence(&gf)]
                            .iter()
                            .filter(|&&x| x)
                            .count();
                        assert_ne!(n, 2, "{} -> {} -> {}", a.name(), b.name(), c.name());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn trivial_fibrations_compose() {
    let mut s = Sampler::new(8);
    for _ in 0..10 {
        let c = Arc::new(s.category());
        let p = s.trivial_fibration(&c, 3);
        let q = s.trivial_fibration(&p.source, 3);
        let pq = q.then(&p);
        assert!(is_trivial_fibration(&pq));
    }
}

#[test]
fn premises_hold_on_a_small_sample() {
    let mut s = Sampler::new(2);
    let mut maps = Vec::new();
    let mut anchor_list = Vec::new();
    for _ in 0..6 {
        let b = Arc::new(s.multicat(2));
        maps.push(s.trivial_fibration(&b, 2));
        let a = Arc::new(s.multicat(2));
        if let Some(f) = s.map(&a, &b, 8, DEFAULT_BUDGET) {
            maps.push(f);
        }
        anchor_list.extend(anchors(&b));
    }
    let c2 = Arc::new(com(2));
    maps.extend(enumerate_multifunctors(&c2, &c2).unwrap());
    maps.push(embed_functor(&delta_y(), 2));
    let report = check_premises(
        &maps,
        &anchor_list,
        &generating_i(2),
        &generating_j(2),
        DEFAULT_BUDGET,
        OracleLimits::default(),
    );
    assert!(report.ok(), "{report}");
    assert!(
        report.checked[0] >= 10 && report.checked[2] >= 6,
        "{report}"
    );
}
