//! Idempotent completion (Karoubi envelope) of categories and
//! multicategories, and Morita equivalences.
//!
//! An object of `C^Kar` is a pair `(X, e)` with `e` idempotent, printed
//! `X|e`, or just `X` when `e = id_X`. A morphism `(X, e) → (X', e')` is an
//! `h : X → X'` with `e'∘h∘e = h`; it keeps the name of `h` between
//! identity pairs and is printed `h|e>e'` otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::colimits::pushout_multicat_along_e_iter;
use crate::constructions::{embed_functor, underlying_1, underlying_functor};
use crate::error::{Error, Result};
use crate::map::{Functor, MultiFunctor};
use crate::search::MapSearch;
use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::{Mor, Obj, TablesBuilder};
use crate::DEFAULT_BUDGET;

/// `C^Kar` with `α_C : C → C^Kar`, `X ↦ (X, id_X)`.
#[derive(Clone, Debug)]
pub struct Kar {
    pub category: Arc<FiniteCategory>,
    pub alpha: Functor,
    /// `(X, e)` for every object of `C^Kar`.
    pub pairs: Vec<(Obj, Mor)>,
    /// The underlying morphism of `C` of every morphism of `C^Kar`.
    pub underlying: Vec<Mor>,
}

impl Kar {
    pub fn object_of(&self, x: Obj, e: Mor) -> Option<Obj> {
        self.pairs.iter().position(|&p| p == (x, e))
    }

    /// The morphism `h : (X, e) → (X', e')`, if `e'∘h∘e = h`.
    pub fn morphism_of(&self, src: Obj, tgt: Obj, h: Mor) -> Option<Mor> {
        self.category
            .homs(src, tgt)
            .iter()
            .copied()
            .find(|&k| self.underlying[k] == h)
    }
}

fn pair_name(c: &FiniteCategory, x: Obj, e: Mor) -> String {
    if c.is_identity(e) {
        c.object_name(x).to_string()
    } else {
        format!("{}|{}", c.object_name(x), c.morphism_name(e))
    }
}

pub fn kar_category(c: &Arc<FiniteCategory>) -> Kar {
    let pairs0 = c.idempotents();
    let mut b = TablesBuilder::new(format!("{}^Kar", c.name()), 1);
    // names of C are kept; derived names get primes until they are unused
    let mut used_obj: BTreeSet<String> = (0..c.object_count())
        .map(|x| c.object_name(x).to_string())
        .collect();
    let mut used_mor: BTreeSet<String> = (0..c.morphism_count())
        .map(|h| c.morphism_name(h).to_string())
        .collect();
    let objs: Vec<Obj> = pairs0
        .iter()
        .map(|&(x, e)| {
            if c.is_identity(e) {
                return b.object(pair_name(c, x, e));
            }
            let mut name = pair_name(c, x, e);
            while used_obj.contains(&name) || used_mor.contains(&format!("id_{name}")) {
                name.push('\'');
            }
            used_obj.insert(name.clone());
            used_mor.insert(format!("id_{name}"));
            b.object(name)
        })
        .collect();
    let mut index: BTreeMap<(usize, usize, Mor), Mor> = BTreeMap::new();
    for (p, &(x, e)) in pairs0.iter().enumerate() {
        for (p2, &(x2, e2)) in pairs0.iter().enumerate() {
            for &h in c.homs(x, x2) {
                if c.compose(e2, c.compose(h, e)) != h {
                    continue;
                }
                let m = if p == p2 && h == e {
                    b.identity(objs[p])
                } else if c.is_identity(e) && c.is_identity(e2) {
                    b.morphism(c.morphism_name(h), vec![objs[p]], objs[p2])
                } else {
                    let mut name = format!(
                        "{}|{}>{}",
                        c.morphism_name(h),
                        c.morphism_name(e),
                        c.morphism_name(e2)
                    );
                    while used_mor.contains(&name) {
                        name.push('\'');
                    }
                    used_mor.insert(name.clone());
                    b.morphism(name, vec![objs[p]], objs[p2])
                };
                index.insert((p, p2, h), m);
            }
        }
    }
    for (&(p, p2, h), &m) in &index {
        for (&(q, q2, g), &n) in &index {
            if q == p2 {
                b.set_comp(n, vec![m], index[&(p, q2, c.compose(g, h))]);
            }
        }
    }
    let built = b.build();
    let category = Arc::new(FiniteCategory::from_tables(built.tables));
    let mut pairs = vec![(0, 0); pairs0.len()];
    for (p, &o) in objs.iter().enumerate() {
        pairs[built.objects[o]] = pairs0[p];
    }
    let mut underlying = vec![0; category.morphism_count()];
    for (&(_, _, h), &m) in &index {
        underlying[built.morphisms[m]] = h;
    }
    let kar = Kar {
        category: category.clone(),
        alpha: Functor::new(c.clone(), category.clone(), vec![], vec![]),
        pairs,
        underlying,
    };
    let objects: Vec<Obj> = (0..c.object_count())
        .map(|x| kar.object_of(x, c.identity(x)).expect("identity pair"))
        .collect();
    let morphisms: Vec<Mor> = (0..c.morphism_count())
        .map(|h| {
            kar.morphism_of(objects[c.src(h)], objects[c.tgt(h)], h)
                .expect("every h lies between identity pairs")
        })
        .collect();
    Kar {
        alpha: Functor::new(c.clone(), category, objects, morphisms),
        ..kar
    }
}

/// An idempotent with no splitting `e = s∘r`, `r∘s = id`, if there is one.
pub fn unsplit_idempotent(c: &FiniteCategory) -> Option<(Obj, Mor)> {
    c.idempotents().into_iter().find(|&(x, e)| {
        !(0..c.object_count()).any(|y| {
            c.homs(x, y).iter().any(|&r| {
                c.homs(y, x)
                    .iter()
                    .any(|&s| c.compose(s, r) == e && c.compose(r, s) == c.identity(y))
            })
        })
    })
}

pub fn idempotents_split(c: &FiniteCategory) -> bool {
    unsplit_idempotent(c).is_none()
}

/// `y` is a retract of `x`: some `s : y → x`, `r : x → y` with `r∘s = id_y`.
pub fn is_retract(c: &FiniteCategory, y: Obj, x: Obj) -> bool {
    c.homs(y, x).iter().any(|&s| {
        c.homs(x, y)
            .iter()
            .any(|&r| c.compose(r, s) == c.identity(y))
    })
}

/// Objects of the target that are not retracts of any object in the image.
pub fn unreachable_objects(f: &Functor) -> Vec<Obj> {
    let d = &f.target;
    (0..d.object_count())
        .filter(|&y| !f.objects.iter().any(|&x| is_retract(d, y, x)))
        .collect()
}

/// Full and faithful, and every object of the target is a retract of an
/// object in the image.
pub fn is_morita_equivalence(f: &Functor) -> bool {
    f.is_full_faithful() && unreachable_objects(f).is_empty()
}

/// `F^Kar : C^Kar → D^Kar`, `(X, e) ↦ (F X, F e)`, `h ↦ F h`.
pub fn kar_functor(f: &Functor, src: &Kar, tgt: &Kar) -> Functor {
    let objects: Vec<Obj> = src
        .pairs
        .iter()
        .map(|&(x, e)| {
            tgt.object_of(f.objects[x], f.morphisms[e])
                .expect("functors preserve idempotents")
        })
        .collect();
    let morphisms = (0..src.category.morphism_count())
        .map(|k| {
            let (a, b) = (src.category.src(k), src.category.tgt(k));
            tgt.morphism_of(objects[a], objects[b], f.morphisms[src.underlying[k]])
                .expect("image satisfies the idempotent equation")
        })
        .collect();
    Functor::new(
        src.category.clone(),
        tgt.category.clone(),
        objects,
        morphisms,
    )
}

/// `M^Kar` as the pushout of `E(M₁^Kar) ← E(M₁) → M`, with both legs.
#[derive(Clone, Debug)]
pub struct KarMulti {
    pub multicat: Arc<Multicat>,
    /// `α_M : M → M^Kar`
    pub alpha: MultiFunctor,
    /// `E(M₁^Kar) → M^Kar`
    pub leg: MultiFunctor,
    pub kar1: Kar,
}

pub fn kar_multicat(m: &Arc<Multicat>) -> Result<KarMulti> {
    let m1 = Arc::new(underlying_1(m));
    let kar1 = kar_category(&m1);
    let r = pushout_multicat_along_e_iter(m, &kar1.alpha)?;
    Ok(KarMulti {
        multicat: r.object,
        alpha: r.leg_c,
        leg: r.leg_b,
        kar1,
    })
}

/// `f^Kar : M^Kar → N^Kar`, the map out of the pushout induced by
/// `α_N ∘ f` and `leg_N ∘ E(f₁^Kar)`.
pub fn kar_multifunctor(f: &MultiFunctor, src: &KarMulti, tgt: &KarMulti) -> Result<MultiFunctor> {
    let f1 = underlying_functor(f);
    let f1_kar = kar_functor(&f1, &src.kar1, &tgt.kar1);
    let via_m = f.then(&tgt.alpha);
    let via_e = embed_functor(&f1_kar, f.target.bound()).then(&tgt.leg);
    let mut search = MapSearch::new(src.multicat.tables(), tgt.multicat.tables())
        .budget(DEFAULT_BUDGET)
        .limit(2);
    for (leg, image) in [(&src.alpha, &via_m), (&src.leg, &via_e)] {
        for (x, &y) in leg.objects.iter().enumerate() {
            search.restrict_object(y, &[image.objects[x]]);
        }
        for (x, &y) in leg.morphisms.iter().enumerate() {
            search.restrict_morphism(y, &[image.morphisms[x]]);
        }
    }
    let sols = search.run()?;
    match sols.as_slice() {
        [one] => Ok(MultiFunctor::new(
            src.multicat.clone(),
            tgt.multicat.clone(),
            one.objects.clone(),
            one.morphisms.clone(),
        )),
        [] => Err(Error::Invalid("no mediating map out of M^Kar".into())),
        _ => Err(Error::Invalid(
            "mediating map out of M^Kar is not unique".into(),
        )),
    }
}

/// Full and faithful on every signature, and every object of `N₁` is a
/// retract of an object in the image of `f₁`.
pub fn is_morita_multi_equivalence(f: &MultiFunctor) -> bool {
    f.is_full_faithful() && unreachable_objects(&underlying_functor(f)).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{arrow, idempotent_monoid};

    #[test]
    fn kar_of_e_has_the_expected_homs() {
        let k = kar_category(&Arc::new(idempotent_monoid()));
        let c = &k.category;
        assert_eq!(c.objects(), ["*", "*|e"]);
        let sizes: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| c.homs(a, b).len())
            .collect();
        assert_eq!(sizes, [2, 1, 1, 1]);
    }

    #[test]
    fn kar_without_idempotents_is_an_isomorphism() {
        let k = kar_category(&Arc::new(arrow()));
        assert!(k.alpha.is_bijective());
    }
}
