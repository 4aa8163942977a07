//! Restriction `u*` and extension `u_!` along object maps, and the two
//! factorizations of a map they give.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::Map;
use crate::structure::Structure;
use crate::tables::{all_signatures, Mor, Obj, Signature, Tables, TablesBuilder};

/// A function from a named finite set into the objects of a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectMap {
    pub domain: Vec<String>,
    pub images: Vec<Obj>,
}

impl ObjectMap {
    pub fn new(domain: Vec<String>, images: Vec<Obj>) -> Self {
        assert_eq!(domain.len(), images.len(), "object map must be total");
        ObjectMap { domain, images }
    }

    /// The object function of a map, with the source object names.
    pub fn of_map<S: Structure>(f: &Map<S>) -> Self {
        ObjectMap::new(f.src().objects().to_vec(), f.objects.clone())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.images.iter().all(|o| seen.insert(*o))
    }
}

/// Result of [`restrict_u`]: `u*B` and the full and faithful map to `B`.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub tables: Tables,
    /// Image in `B` of every morphism of `u*B`.
    pub morphisms: Vec<Mor>,
    /// `(signature in u*B, element of B) → morphism of u*B`.
    pub index: BTreeMap<(Signature, Mor), Mor>,
}

/// `u*B`: objects the domain of `u`, homs `(u*B)(a⃗; b) = B(u a⃗; u b)`.
///
/// Elements keep their names when `u` is injective; otherwise they are
/// tagged with their signature as `h@a1;a2>b`.
pub fn restrict_u(u: &ObjectMap, b: &Tables) -> Restricted {
    let injective = u.is_injective();
    let mut tb = TablesBuilder::new(format!("{}*", b.name()), b.bound());
    for o in &u.domain {
        tb.object(o.clone());
    }
    let mut index: BTreeMap<(Signature, Mor), Mor> = BTreeMap::new();
    for sig in all_signatures(u.domain.len(), b.bound()) {
        let image = sig.map_objects(|o| u.images[o]);
        for &h in b.hom(&image) {
            let m = if sig.arity() == 1 && sig.inputs[0] == sig.output && b.is_identity(h) {
                tb.identity(sig.output)
            } else {
                let name = if injective {
                    b.morphism_name(h).to_string()
                } else {
                    let ins: Vec<&str> = sig.inputs.iter().map(|&o| u.domain[o].as_str()).collect();
                    format!(
                        "{}@{}>{}",
                        b.morphism_name(h),
                        ins.join(";"),
                        u.domain[sig.output]
                    )
                };
                tb.morphism(name, sig.inputs.clone(), sig.output)
            };
            index.insert((sig.clone(), h), m);
        }
    }
    let sig_of = |m: Mor, tb: &TablesBuilder| tb.sig(m).clone();
    let entries: Vec<((Signature, Mor), Mor)> =
        index.iter().map(|(k, v)| (k.clone(), *v)).collect();
    for ((sig, h), m) in &entries {
        for sigma in crate::perm::Perm::non_identity(sig.arity()) {
            if let Some(x) = b.act(&sigma, *h) {
                let target = index[&(sig.permuted(&sigma), x)];
                tb.set_action(*m, sigma, target);
            }
        }
    }
    // composition: for each element g and each tuple of elements over its inputs
    let mut by_output: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); u.domain.len()];
    for ((sig, h), m) in &entries {
        by_output[sig.output].push((*m, *h));
    }
    for ((sig, h), m) in &entries {
        let mut tuples: Vec<(Vec<Mor>, Vec<Mor>, usize)> = vec![(Vec::new(), Vec::new(), 0)];
        for &a in &sig.inputs {
            let mut next = Vec::new();
            for (ms, hs, ar) in &tuples {
                for &(fm, fh) in &by_output[a] {
                    let nar = ar + sig_of(fm, &tb).arity();
                    if nar > b.bound() {
                        continue;
                    }
                    let (mut ms, mut hs) = (ms.clone(), hs.clone());
                    ms.push(fm);
                    hs.push(fh);
                    next.push((ms, hs, nar));
                }
            }
            tuples = next;
        }
        for (ms, hs, _) in tuples {
            if let Some(x) = b.comp(*h, &hs) {
                let mut inputs = Vec::new();
                for &f in &ms {
                    inputs.extend_from_slice(&sig_of(f, &tb).inputs);
                }
                let rsig = Signature::new(inputs, sig.output);
                tb.set_comp(*m, ms, index[&(rsig, x)]);
            }
        }
    }
    let built = tb.build();
    let mut morphisms = vec![0; built.tables.morphism_count()];
    let index: BTreeMap<(Signature, Mor), Mor> = index
        .into_iter()
        .map(|((sig, h), m)| {
            morphisms[built.morphisms[m]] = h;
            ((sig, h), built.morphisms[m])
        })
        .collect();
    Restricted {
        tables: built.tables,
        morphisms,
        index,
    }
}

/// Image factorization `f = incl ∘ f^u` with `u = Ob(f)`: `f^u` is the
/// identity on objects into `u*B` and `incl` is full and faithful.
pub fn factor_through_image<S: Structure>(f: &Map<S>) -> (Map<S>, Map<S>) {
    let u = ObjectMap::of_map(f);
    let r = restrict_u(&u, f.tgt());
    let mid = Arc::new(S::from_tables(r.tables.clone()));
    let s = f.src();
    let first_morphisms = (0..s.morphism_count())
        .map(|m| r.index[&(s.sig(m).clone(), f.morphisms[m])])
        .collect();
    let first = Map::new(
        f.source.clone(),
        mid.clone(),
        (0..s.object_count()).collect(),
        first_morphisms,
    );
    let second = Map::new(mid, f.target.clone(), u.images.clone(), r.morphisms);
    (first, second)
}

/// The full sub-structure on `objects` with its inclusion.
pub fn full_inclusion<S: Structure>(b: &Arc<S>, objects: &[Obj]) -> Map<S> {
    let t = b.tables();
    let u = ObjectMap::new(
        objects
            .iter()
            .map(|&o| t.object_name(o).to_string())
            .collect(),
        objects.to_vec(),
    );
    let r = restrict_u(&u, t);
    let images = r
        .tables
        .objects()
        .iter()
        .map(|n| t.object_index(n).unwrap())
        .collect();
    Map::new(
        Arc::new(S::from_tables(r.tables)),
        b.clone(),
        images,
        r.morphisms,
    )
}

/// Result of [`extend_u`]: `u_!M` and the unit `M → u_!M`.
#[derive(Clone, Debug)]
pub struct Extended {
    pub tables: Tables,
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

/// `u_!M` for injective `u : Ob(M) → S`: homs of `M` transported along `u`;
/// objects outside the image get identities only; everything else empty.
///
/// `targets` names the objects of `S`; `u` maps `Ob(M)` into it.
pub fn extend_u(u: &[Obj], targets: &[String], m: &Tables) -> Result<Extended> {
    let om = ObjectMap::new(m.objects().to_vec(), u.to_vec());
    if !om.is_injective() {
        return Err(Error::NotInjective);
    }
    let mut b = TablesBuilder::new(format!("{}!", m.name()), m.bound());
    for o in targets {
        b.object(o.clone());
    }
    let ms: Vec<Mor> = (0..m.morphism_count())
        .map(|x| {
            let sig = m.sig(x).map_objects(|o| u[o]);
            if m.is_identity(x) {
                b.identity(sig.output)
            } else {
                b.morphism(m.morphism_name(x), sig.inputs, sig.output)
            }
        })
        .collect();
    for ((g, fs), h) in m.comp_table() {
        b.set_comp(ms[*g], fs.iter().map(|&f| ms[f]).collect(), ms[*h]);
    }
    for ((f, s), g) in m.action_table() {
        b.set_action(ms[*f], s.clone(), ms[*g]);
    }
    let built = b.build();
    Ok(Extended {
        objects: u.iter().map(|&o| built.objects[o]).collect(),
        morphisms: ms.iter().map(|&x| built.morphisms[x]).collect(),
        tables: built.tables,
    })
}

/// Factors `f : M → N` as `M → u_!M → N` with the second map the identity
/// on objects, when `Ob(f)` is injective; otherwise through `u*N`.
pub fn factor_cofibration_style<S: Structure>(f: &Map<S>) -> Result<(Map<S>, Map<S>)> {
    if !f.is_injective_on_objects() {
        return Ok(factor_through_image(f));
    }
    let n = f.tgt();
    let ext = extend_u(&f.objects, n.objects(), f.src())?;
    let mid = Arc::new(S::from_tables(ext.tables.clone()));
    let first = Map::new(
        f.source.clone(),
        mid.clone(),
        ext.objects.clone(),
        ext.morphisms.clone(),
    );
    let mut second_morphisms = vec![usize::MAX; ext.tables.morphism_count()];
    for (x, &y) in ext.morphisms.iter().enumerate() {
        second_morphisms[y] = f.morphisms[x];
    }
    for o in 0..n.object_count() {
        second_morphisms[ext.tables.identity(o)] = n.identity(o);
    }
    let second = Map::new(
        mid,
        f.target.clone(),
        (0..n.object_count()).collect(),
        second_morphisms,
    );
    Ok((first, second))
}
