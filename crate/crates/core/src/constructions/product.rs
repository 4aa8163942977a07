//! Tensor product of multicategories; discrete and indiscrete categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::map::MultiFunctor;
use crate::standard::category_from;
use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::{Mor, Obj, TablesBuilder};

fn pair(a: &str, b: &str) -> String {
    format!("<{a};{b}>")
}

/// `M ⊗ N`: objects are pairs, `(M⊗N)_k` at paired signatures is
/// `M_k × N_k`, with action and composition componentwise.
pub fn tensor(m: &Multicat, n: &Multicat) -> Multicat {
    let bound = m.bound().min(n.bound());
    let mut b = TablesBuilder::new(format!("{}x{}", m.name(), n.name()), bound);
    let no = n.object_count();
    for a in m.objects() {
        for c in n.objects() {
            b.object(pair(a, c));
        }
    }
    let obj = |x: usize, y: usize| x * no + y;
    let mut index: BTreeMap<(Mor, Mor), Mor> = BTreeMap::new();
    for f in 0..m.morphism_count() {
        for g in 0..n.morphism_count() {
            let (sf, sg) = (m.sig(f), n.sig(g));
            if sf.arity() != sg.arity() || sf.arity() > bound {
                continue;
            }
            let out = obj(sf.output, sg.output);
            let x = if m.is_identity(f) && n.is_identity(g) {
                b.identity(out)
            } else {
                let inputs = sf
                    .inputs
                    .iter()
                    .zip(&sg.inputs)
                    .map(|(&p, &q)| obj(p, q))
                    .collect();
                b.morphism(pair(m.morphism_name(f), n.morphism_name(g)), inputs, out)
            };
            index.insert((f, g), x);
        }
    }
    for (&(f, g), &x) in &index {
        for sigma in crate::perm::Perm::non_identity(m.arity(f)) {
            if let (Some(f2), Some(g2)) = (m.act(&sigma, f), n.act(&sigma, g)) {
                b.set_action(x, sigma, index[&(f2, g2)]);
            }
        }
    }
    for ((g, fs), h) in m.comp_table() {
        for ((g2, fs2), h2) in n.comp_table() {
            if fs.len() != fs2.len() || m.arity(*h) > bound {
                continue;
            }
            let parts: Option<Vec<Mor>> = fs
                .iter()
                .zip(fs2)
                .map(|(&a, &c)| index.get(&(a, c)).copied())
                .collect();
            let (Some(parts), Some(&gx), Some(&hx)) =
                (parts, index.get(&(*g, *g2)), index.get(&(*h, *h2)))
            else {
                continue;
            };
            b.set_comp(gx, parts, hx);
        }
    }
    Multicat::from_tables(b.build().tables)
}

/// `f ⊗ g : M ⊗ N → M' ⊗ N'`, componentwise.
pub fn tensor_map(f: &MultiFunctor, g: &MultiFunctor) -> MultiFunctor {
    let source = Arc::new(tensor(&f.source, &g.source));
    let target = Arc::new(tensor(&f.target, &g.target));
    let (m, n) = (&f.target, &g.target);
    let objects = (0..f.source.object_count())
        .flat_map(|a| (0..g.source.object_count()).map(move |c| (a, c)))
        .map(|(a, c)| {
            let x = source
                .object_index(&pair(f.source.object_name(a), g.source.object_name(c)))
                .unwrap();
            let y = target
                .object_index(&pair(
                    m.object_name(f.objects[a]),
                    n.object_name(g.objects[c]),
                ))
                .unwrap();
            (x, y)
        })
        .collect::<BTreeMap<Obj, Obj>>()
        .into_values()
        .collect();
    let element = |t: &Multicat, l: &Multicat, r: &Multicat, a: Mor, b: Mor| -> Mor {
        if l.is_identity(a) && r.is_identity(b) {
            let o = pair(
                l.object_name(l.sig(a).output),
                r.object_name(r.sig(b).output),
            );
            t.identity(t.object_index(&o).unwrap())
        } else {
            t.morphism_index(&pair(l.morphism_name(a), r.morphism_name(b)))
                .unwrap()
        }
    };
    let mut morphisms = vec![0; source.morphism_count()];
    for a in 0..f.source.morphism_count() {
        for b in 0..g.source.morphism_count() {
            let ar = f.source.arity(a);
            if ar != g.source.arity(b) || ar > source.bound() {
                continue;
            }
            let x = element(&source, &f.source, &g.source, a, b);
            morphisms[x] = element(&target, m, n, f.morphisms[a], g.morphisms[b]);
        }
    }
    MultiFunctor::new(source, target, objects, morphisms)
}

/// Identities only.
pub fn discrete(objects: &[&str]) -> FiniteCategory {
    category_from("discrete", objects, &[], &[])
}

/// Exactly one morphism `a>b` between every ordered pair of distinct objects.
pub fn indiscrete(objects: &[&str]) -> FiniteCategory {
    let name = |a: &str, b: &str| {
        if a == b {
            format!("id_{a}")
        } else {
            format!("{a}>{b}")
        }
    };
    let arrows: Vec<(String, &str, &str)> = objects
        .iter()
        .flat_map(|&a| {
            objects
                .iter()
                .filter(move |&&b| b != a)
                .map(move |&b| (name(a, b), a, b))
        })
        .collect();
    let mut table = Vec::new();
    for &a in objects {
        for &b in objects {
            for &c in objects {
                if a != b && b != c {
                    table.push((name(b, c), name(a, b), name(a, c)));
                }
            }
        }
    }
    let arrows_ref: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(n, a, b)| (n.as_str(), *a, *b))
        .collect();
    let table_ref: Vec<(&str, &str, &str)> = table
        .iter()
        .map(|(g, f, h)| (g.as_str(), f.as_str(), h.as_str()))
        .collect();
    category_from("indiscrete", objects, &arrows_ref, &table_ref)
}
