use std::sync::Arc;

use multicat::constructions::*;
use multicat::search::{are_isomorphic, enumerate_functors, enumerate_multifunctors, MapSearch};
use multicat::standard::{arrow, idempotent_monoid, interval_xy, terminal, z2};
use multicat::structure::{FiniteCategory, Graph, MultiGraph, Multicat, Structure};
use multicat::tables::{all_signatures, Signature, TablesBuilder};
use multicat::validate::{validate_category, validate_multicat};

fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

#[test]
fn e_of_terminal_has_one_morphism() {
    for k in 1..=3 {
        let m = embed_e(&terminal(), k);
        assert_eq!(m.morphism_count(), 1);
        assert!(validate_multicat(&m).ok());
    }
}

#[test]
fn e_of_interval_has_no_binary_operations() {
    let c = interval_xy();
    let m = embed_e(&c, 2);
    let (x, y) = (m.object_index("x").unwrap(), m.object_index("y").unwrap());
    let names: Vec<&str> = m
        .hom_unary(x, y)
        .iter()
        .map(|&f| m.morphism_name(f))
        .collect();
    assert_eq!(names, vec!["s"]);
    for sig in all_signatures(2, 2).into_iter().filter(|s| s.arity() == 2) {
        assert!(m.hom(&sig).is_empty());
    }
}

#[test]
fn underlying_of_e_is_the_category() {
    for c in [
        terminal(),
        arrow(),
        interval_xy(),
        idempotent_monoid(),
        z2(),
    ] {
        assert!(underlying_1(&embed_e(&c, 3)).same_tables(&c));
    }
}

#[test]
fn underlying_of_com_is_terminal() {
    let u = underlying_1(&com(3));
    assert!(are_isomorphic(&arc(u), &arc(terminal())).unwrap());
}

#[test]
fn unary_idempotent_gives_the_monoid_e() {
    let mut b = TablesBuilder::new("m", 2);
    let a = b.object("a");
    let e = b.morphism("e", vec![a], a);
    b.set_comp(e, vec![e], e);
    b.morphism("p", vec![a, a], a);
    let m = Multicat::from_tables(b.build().tables);
    let u = underlying_1(&m);
    assert_eq!(u.morphism_count(), 2);
    assert!(are_isomorphic(&arc(u), &arc(idempotent_monoid())).unwrap());
}

#[test]
fn sym_leaves_nullary_signatures_alone() {
    let g = cell_multigraph(0, &["c", "d"]);
    let s = sym(&g);
    let star = s.object_index("*").unwrap();
    assert_eq!(s.hom(&Signature::new(vec![], star)).len(), 2);
}

#[test]
fn sym_of_binary_cell() {
    let s = sym(&cell_multigraph(2, &["m"]));
    let one = s.object_index("1").unwrap();
    let two = s.object_index("2").unwrap();
    let star = s.object_index("*").unwrap();
    assert_eq!(s.hom(&Signature::new(vec![one, two], star)).len(), 1);
    assert_eq!(s.hom(&Signature::new(vec![two, one], star)).len(), 1);
    assert_eq!(s.morphisms.len(), 2);
}

fn brute_sym_count(g: &MultiGraph, sig: &Signature) -> usize {
    multicat::perm::Perm::all(sig.arity())
        .iter()
        .map(|s| g.hom(&sig.permuted(&s.inverse())).len())
        .sum()
}

#[test]
fn sym_cardinality_law() {
    let mut g = MultiGraph::new("g", 3, vec!["a".into(), "b".into()]);
    for (i, (ins, out)) in [
        (vec![0, 1], 0),
        (vec![0, 0, 1], 1),
        (vec![1, 0], 0),
        (vec![], 1),
        (vec![1], 0),
    ]
    .into_iter()
    .enumerate()
    {
        g.morphisms.push(multicat::tables::MorphismDecl {
            name: format!("g{i}"),
            sig: Signature::new(ins, out),
        });
    }
    let s = sym(&g);
    for sig in all_signatures(2, 3) {
        assert_eq!(s.hom(&sig).len(), brute_sym_count(&g, &sig), "{sig:?}");
    }
}

#[test]
fn cells() {
    let c0 = cell_multigraph(0, &["a"]);
    assert_eq!(c0.objects, vec!["*"]);
    assert_eq!(c0.hom(&Signature::new(vec![], 0)).len(), 1);
    let c2 = cell_multigraph(2, &[]);
    assert_eq!(c2.objects.len(), 3);
    assert!(c2.morphisms.is_empty());
}

#[test]
fn maps_out_of_a_cell_are_choices_of_elements() {
    let m = com(2);
    let target = multigraph_tables(&forget(&two_binary_cells(), false));
    for (k, a) in [(0, vec!["p"]), (1, vec!["p", "q"]), (2, vec!["p"])] {
        for t in [multigraph_tables(&forget(&m, false)), target.clone()] {
            let cell = multigraph_tables(&cell_multigraph(k, &a));
            let maps = MapSearch::new(&cell, &t).run().unwrap().len();
            let expected: usize = all_signatures(t.object_count(), k)
                .iter()
                .filter(|s| s.arity() == k)
                .map(|s| t.hom(s).len().pow(a.len() as u32))
                .sum();
            assert_eq!(maps, expected);
        }
    }
}

fn two_binary_cells() -> Multicat {
    free_symmulticat(&sym(&cell_multigraph(2, &["m", "n"])), 2, 4)
        .unwrap()
        .result
}

#[test]
fn interval_graphs_and_free_categories() {
    let g = interval_graph(&[]);
    assert!(g.edges.is_empty() && g.objects.len() == 2);
    let f = free_category(&interval_graph(&["j"]), 8);
    assert!(f.exact);
    assert!(are_isomorphic(&arc(f.result), &arc(arrow())).unwrap());
    let empty = free_category(
        &Graph {
            objects: vec!["a".into(), "b".into()],
            edges: vec![],
        },
        3,
    );
    assert_eq!(empty.result.morphism_count(), 2);
}

#[test]
fn free_category_on_a_cycle_is_flagged() {
    let g = Graph {
        objects: vec!["x".into(), "y".into()],
        edges: vec![("u".into(), 0, 1), ("v".into(), 1, 0)],
    };
    let f = free_category(&g, 3);
    assert!(!f.exact);
    let x = f.result.object_index("x").unwrap();
    assert_eq!(f.result.hom_unary(x, x).len(), 2);
}

#[test]
fn free_on_symmetrized_cells() {
    let f = free_symmulticat(&sym(&cell_multigraph(2, &["m"])), 2, 4).unwrap();
    assert!(f.exact);
    assert_eq!(f.result.morphism_count(), 5);
    assert!(validate_multicat(&f.result).ok());
    let c = free_symmulticat(&sym(&cell_multigraph(0, &["c"])), 2, 4).unwrap();
    assert_eq!(c.result.morphism_count(), 2);
}

#[test]
fn free_forgetful_hom_bijection_on_cells() {
    for (k, a) in [
        (0, vec!["c"]),
        (1, vec!["c"]),
        (2, vec!["m"]),
        (2, vec!["m", "n"]),
    ] {
        let g = sym(&cell_multigraph(k, &a));
        let free = arc(free_symmulticat(&g, 2, 4).unwrap().result);
        for target in [com(2), two_binary_cells(), embed_e(&interval_xy(), 2)] {
            let lhs = enumerate_multifunctors(&free, &arc(target.clone()))
                .unwrap()
                .len();
            let gt = multigraph_tables(&g);
            let ut = multigraph_tables(&forget(&target, true));
            let rhs = MapSearch::new(&gt, &ut).run().unwrap().len();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn restriction_along_identity_and_constants() {
    let b = interval_xy();
    let id = ObjectMap::new(b.objects().to_vec(), vec![0, 1]);
    let r = restrict_u(&id, &b);
    assert!(r.tables.same_tables(&b));
    let constant = ObjectMap::new(vec!["p".into()], vec![0]);
    let r = restrict_u(&constant, &b);
    assert_eq!(r.tables.object_count(), 1);
    assert_eq!(r.tables.morphism_count(), b.hom_unary(0, 0).len());
}

#[test]
fn image_factorization_recomposes() {
    let c = arc(interval_xy());
    for f in enumerate_functors(&arc(arrow()), &c).unwrap() {
        let (first, second) = factor_through_image(&f);
        assert!(first.is_valid() && second.is_valid());
        assert_eq!(
            first.objects,
            (0..first.src().object_count()).collect::<Vec<_>>()
        );
        assert!(validate_category(&first.target).ok());
        let back = first.then(&second);
        assert_eq!(back.objects, f.objects);
        assert_eq!(back.morphisms, f.morphisms);
    }
}

#[test]
fn extension_along_injections() {
    let one = embed_e(&terminal(), 2);
    let ext = extend_u(&[0], &["*".into(), "q".into()], &one).unwrap();
    assert_eq!(ext.tables.object_count(), 2);
    assert_eq!(ext.tables.morphism_count(), 2);
    assert!(validate_multicat(&Multicat::from_tables(ext.tables.clone())).ok());
    let bij = extend_u(
        &[1, 0],
        &["x".into(), "y".into()],
        &embed_e(&interval_xy(), 2),
    )
    .unwrap();
    assert!(validate_multicat(&Multicat::from_tables(bij.tables)).ok());
    assert!(extend_u(&[0, 0], &["z".into()], &embed_e(&interval_xy(), 2)).is_err());
}

#[test]
fn mixed_signatures_are_empty_after_extension() {
    let m = two_binary_cells();
    let mut targets = m.objects().to_vec();
    targets.push("q".into());
    let u: Vec<usize> = (0..m.object_count()).collect();
    let ext = extend_u(&u, &targets, &m).unwrap();
    let q = ext.tables.object_index("q").unwrap();
    for sig in all_signatures(ext.tables.object_count(), 2) {
        let has_q = sig.inputs.contains(&q) || sig.output == q;
        let diag = sig.arity() == 1 && sig.inputs[0] == q && sig.output == q;
        if has_q && !diag {
            assert!(ext.tables.hom(&sig).is_empty());
        }
    }
}

#[test]
fn cofibration_style_factorization() {
    let k = 2;
    let one = arc(embed_e(&terminal(), k));
    let xy = arc(embed_e(&interval_xy(), k));
    for f in enumerate_multifunctors(&one, &xy).unwrap() {
        let (first, second) = factor_cofibration_style(&f).unwrap();
        assert!(first.is_valid() && second.is_valid());
        assert_eq!(first.target.object_count(), 2);
        assert_eq!(first.target.morphism_count(), 2);
        let back = first.then(&second);
        assert_eq!(
            (back.objects, back.morphisms),
            (f.objects.clone(), f.morphisms.clone())
        );
    }
}

#[test]
fn restrict_after_extend_is_the_original() {
    let m = two_binary_cells();
    let mut targets = m.objects().to_vec();
    targets.push("q".into());
    let u: Vec<usize> = (0..m.object_count()).collect();
    let ext = extend_u(&u, &targets, &m).unwrap();
    let back = restrict_u(
        &ObjectMap::new(m.objects().to_vec(), ext.objects.clone()),
        &ext.tables,
    );
    assert!(are_isomorphic(&arc(Multicat::from_tables(back.tables)), &arc(m)).unwrap());
}

#[test]
fn tensor_with_com_is_the_identity() {
    for m in [two_binary_cells(), embed_e(&interval_xy(), 2), com(2)] {
        let t = tensor(&m, &com(2));
        assert!(validate_multicat(&t).ok());
        assert!(are_isomorphic(&arc(t), &arc(m)).unwrap());
    }
}

#[test]
fn tensor_cardinalities_multiply_and_commute() {
    let m = two_binary_cells();
    let n = embed_e(&idempotent_monoid(), 2);
    let t = tensor(&m, &n);
    assert!(validate_multicat(&t).ok());
    for sig in all_signatures(m.object_count(), 2) {
        for sig2 in all_signatures(n.object_count(), 2) {
            if sig.arity() != sig2.arity() {
                continue;
            }
            let no = n.object_count();
            let paired = Signature::new(
                sig.inputs
                    .iter()
                    .zip(&sig2.inputs)
                    .map(|(&a, &b)| a * no + b)
                    .collect(),
                sig.output * no + sig2.output,
            );
            assert_eq!(t.hom(&paired).len(), m.hom(&sig).len() * n.hom(&sig2).len());
        }
    }
    assert!(are_isomorphic(&arc(t), &arc(tensor(&n, &m))).unwrap());
}

#[test]
fn discrete_and_indiscrete() {
    assert!(are_isomorphic(&arc(discrete(&["a"])), &arc(terminal())).unwrap());
    assert!(are_isomorphic(&arc(indiscrete(&["a"])), &arc(terminal())).unwrap());
    assert_eq!(indiscrete(&["a", "b"]).morphism_count(), 4);
    assert_eq!(discrete(&["a", "b"]).morphism_count(), 2);
    assert!(validate_category(&indiscrete(&["a", "b", "c"])).ok());
    for c in [arrow(), interval_xy(), idempotent_monoid()] {
        let c = arc(c);
        let d = arc(discrete(&["p", "q"]));
        let n = c.object_count();
        assert_eq!(enumerate_functors(&d, &c).unwrap().len(), n * n);
        let i = arc(indiscrete(&["p", "q"]));
        assert_eq!(
            enumerate_functors(&c, &i).unwrap().len(),
            2usize.pow(n as u32)
        );
    }
}

#[test]
fn e_is_left_adjoint_and_fully_faithful() {
    let cats = [
        terminal(),
        arrow(),
        interval_xy(),
        idempotent_monoid(),
        z2(),
    ];
    for c in &cats {
        for m in [com(2), two_binary_cells(), embed_e(&idempotent_monoid(), 2)] {
            let lhs = enumerate_multifunctors(&arc(embed_e(c, 2)), &arc(m.clone()))
                .unwrap()
                .len();
            let rhs = enumerate_functors(&arc(c.clone()), &arc(underlying_1(&m)))
                .unwrap()
                .len();
            assert_eq!(lhs, rhs);
        }
        for d in &cats {
            let a = enumerate_functors(&arc(c.clone()), &arc(d.clone()))
                .unwrap()
                .len();
            let b = enumerate_multifunctors(&arc(embed_e(c, 2)), &arc(embed_e(d, 2)))
                .unwrap()
                .len();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn constructions_commute_with_truncation() {
    let m = free_symmulticat(&sym(&cell_multigraph(3, &["t"])), 3, 4)
        .unwrap()
        .result;
    let n = com(3);
    assert!(tensor(&m, &n)
        .truncate(2)
        .same_tables(&tensor(&m.truncate(2), &n.truncate(2))));
    assert!(embed_e(&interval_xy(), 3)
        .truncate(2)
        .same_tables(&embed_e(&interval_xy(), 2)));
    assert!(validate_multicat(&m.truncate(2)).ok());
    let _ = FiniteCategory::from_tables(terminal().into_tables());
}
