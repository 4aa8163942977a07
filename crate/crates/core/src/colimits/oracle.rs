//! Pushouts by presentation: generators from both sides, glued along `A`,
//! then closed within a size limit.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{fresh_name, Provenance, PushoutResult};
use crate::error::{Error, Result};
use crate::map::Map;
use crate::presentation::{CloseLimits, Presentation};
use crate::structure::Structure;
use crate::tables::{Mor, Tables};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_elements: usize,
    pub max_rounds: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        let d = CloseLimits::default();
        OracleLimits {
            max_elements: d.max_elements,
            max_rounds: d.max_rounds,
        }
    }
}

/// Pushout of `C ←f A →i B` for arbitrary `f` and `i`.
///
/// `exact` is false when the closure stopped at the limits; the result is
/// then a truncation of the true pushout and its legs are still maps.
pub fn bounded_pushout_oracle<S: Structure>(
    f: &Map<S>,
    i: &Map<S>,
    limits: OracleLimits,
) -> Result<PushoutResult<S>> {
    if !Arc::ptr_eq(&f.source, &i.source) && !f.src().same_tables(i.src()) {
        return Err(Error::Invalid("span legs have different sources".into()));
    }
    for (leg, m) in [("f", f), ("i", i)] {
        if let Some(p) = m.problems().first() {
            return Err(Error::Invalid(format!("{leg} is not a map: {p}")));
        }
    }
    let a = f.src();
    let c = f.tgt();
    let b = i.tgt();
    let bound = b.bound().max(c.bound());
    let (nb, nc) = (b.object_count(), c.object_count());

    // objects: B ⊔ C with i(x) ~ f(x); B occupies 0..nb
    let mut uf = UnionFind::new(nb + nc);
    for x in 0..a.object_count() {
        uf.union(i.objects[x], nb + f.objects[x]);
    }
    let mut roots: Vec<usize> = Vec::new();
    for o in 0..nb + nc {
        let r = uf.find(o);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let class_of =
        |uf: &mut UnionFind, o: usize| roots.iter().position(|&r| r == uf.find(o)).unwrap();
    let mut taken: BTreeSet<String> = c.objects().iter().cloned().collect();
    let mut names = vec![String::new(); roots.len()];
    let mut named = vec![false; roots.len()];
    for o in 0..nc {
        let k = class_of(&mut uf, nb + o);
        if !named[k] {
            names[k] = c.object_name(o).to_string();
            named[k] = true;
        }
    }
    for o in 0..nb {
        let k = class_of(&mut uf, o);
        if !named[k] {
            names[k] = fresh_name(b.object_name(o).to_string(), &mut taken);
            named[k] = true;
        }
    }
    let b_obj: Vec<usize> = (0..nb).map(|o| class_of(&mut uf, o)).collect();
    let c_obj: Vec<usize> = (0..nc).map(|o| class_of(&mut uf, nb + o)).collect();

    let mut p = Presentation::new(bound, names.clone());
    let mut mor_names: BTreeSet<String> = c.morphisms().iter().map(|d| d.name.clone()).collect();
    for n in &names {
        mor_names.insert(format!("id_{n}"));
    }
    let add = |p: &mut Presentation,
               t: &Tables,
               objs: &[usize],
               rank: u8,
               names: &mut BTreeSet<String>|
     -> Vec<usize> {
        (0..t.morphism_count())
            .map(|m| {
                let sig = t.sig(m).map_objects(|o| objs[o]);
                if t.is_identity(m) {
                    p.identity(sig.output)
                } else {
                    let n = if rank == 0 {
                        t.morphism_name(m).to_string()
                    } else {
                        fresh_name(t.morphism_name(m).to_string(), names)
                    };
                    p.generator(n, rank, sig)
                }
            })
            .collect()
    };
    let c_el = add(&mut p, c, &c_obj, 0, &mut mor_names);
    let b_el = add(&mut p, b, &b_obj, 1, &mut mor_names);
    for (t, el) in [(c, &c_el), (b, &b_el)] {
        for ((g, fs), h) in t.comp_table() {
            p.relate_comp(el[*g], fs.iter().map(|&x| el[x]).collect(), el[*h]);
        }
        for ((m, sigma), n) in t.action_table() {
            p.relate_act(el[*m], sigma.clone(), el[*n]);
        }
    }
    for m in 0..a.morphism_count() {
        p.identify(c_el[f.morphisms[m]], b_el[i.morphisms[m]]);
    }
    let name = format!("{}+{}", c.name(), b.name());
    let closure = p.close(
        &name,
        CloseLimits {
            max_elements: limits.max_elements,
            max_rounds: limits.max_rounds,
        },
    )?;
    let d = Arc::new(S::from_tables(closure.tables));
    let obj_index = |k: usize| {
        d.tables()
            .object_index(&names[k])
            .expect("object survives closure")
    };
    let leg = |src: &Arc<S>, objs: &[usize], el: &[usize]| {
        let morphisms: Vec<Mor> = el.iter().map(|&e| closure.element[e]).collect();
        Map::new(
            src.clone(),
            d.clone(),
            objs.iter().map(|&k| obj_index(k)).collect(),
            morphisms,
        )
    };
    let leg_b = leg(&i.target, &b_obj, &b_el);
    let leg_c = leg(&f.target, &c_obj, &c_el);
    Ok(PushoutResult {
        object: d.clone(),
        leg_b,
        leg_c,
        provenance: Provenance::Oracle,
        exact: closure.exact,
    })
}
