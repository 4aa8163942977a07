//! Pushout of `M ← E(M₁) → E(B)` along `E(i)` for a full inclusion
//! `i : M₁ → B`.
//!
//! With one new object `q`, an element of the pushout `N` is either an
//! element of `B(q, q)` or a formal composite `β ∘ m ∘ (β_1, ..., β_n)`:
//! a core `m ∈ M`, an optional output wire `β : y → q` and optional input
//! wires `β_j : q → x_j`, modulo sliding unary morphisms of `M` through
//! the wires. Composition grafts cores; every internal `q`-wire `β_j ∘ β'_j`
//! lands in `B(x, x_j) = M₁(x, x_j)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::{fresh_name, Provenance, PushoutResult};
use crate::constructions::{embed_e, restrict_u, unary_morphisms, underlying_1, ObjectMap};
use crate::error::{Error, Result};
use crate::map::{Functor, MultiFunctor};
use crate::perm::Perm;
use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::{Mor, Obj, Signature, TablesBuilder};
use crate::union_find::Quotient;
use crate::validate::validate_multicat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Key {
    Formal {
        out: Option<Mor>,
        core: Mor,
        ins: Vec<Option<Mor>>,
    },
    Q(Mor),
}

struct Step<'a> {
    m: &'a Multicat,
    b: &'a FiniteCategory,
    q: Obj,
    /// B object → M object, for objects in the image of `i`
    old: Vec<Option<Obj>>,
    /// M object → B object
    i_obj: Vec<Obj>,
    /// unary M morphism → B morphism
    i_mor: HashMap<Mor, Mor>,
    /// B morphism between old objects → unary M morphism
    back: HashMap<Mor, Mor>,
}

impl Step<'_> {
    fn formal(out: Option<Mor>, core: Mor, ins: Vec<Option<Mor>>) -> Key {
        Key::Formal { out, core, ins }
    }

    fn is_qq(&self, k: &Key) -> bool {
        matches!(k, Key::Formal { out: Some(_), ins, .. } if ins.len() == 1 && ins[0].is_some())
    }

    /// Rewrites a unary `(q; q)` formal element into `B(q, q)`.
    fn normalize(&self, k: Key) -> Key {
        match k {
            Key::Formal {
                out: Some(o),
                core,
                ins,
            } if ins.len() == 1 && ins[0].is_some() => {
                let a = self.i_mor[&core];
                Key::Q(self.b.compose(o, self.b.compose(a, ins[0].unwrap())))
            }
            k => k,
        }
    }

    fn sig(&self, k: &Key) -> Signature {
        let nq = self.m.object_count();
        match k {
            Key::Q(_) => Signature::unary(nq, nq),
            Key::Formal { out, core, ins } => {
                let s = self.m.sig(*core);
                let inputs = ins
                    .iter()
                    .zip(&s.inputs)
                    .map(|(b, &x)| if b.is_some() { nq } else { x })
                    .collect();
                Signature::new(inputs, if out.is_some() { nq } else { s.output })
            }
        }
    }

    /// `m ∘_j a` for unary `a`.
    fn comp_at(&self, m: Mor, j: usize, a: Mor) -> Mor {
        let s = self.m.sig(m);
        let fs: Vec<Mor> = (0..s.arity())
            .map(|p| {
                if p == j {
                    a
                } else {
                    self.m.identity(s.inputs[p])
                }
            })
            .collect();
        self.m
            .comp(m, &fs)
            .expect("unary precomposition stays within the bound")
    }

    fn keys(&self) -> Vec<Key> {
        let b = self.b;
        let mut out = Vec::new();
        for core in 0..self.m.morphism_count() {
            let s = self.m.sig(core);
            let mut outs = vec![None];
            outs.extend(
                b.homs(self.i_obj[s.output], self.q)
                    .iter()
                    .map(|&x| Some(x)),
            );
            let mut ins: Vec<Vec<Option<Mor>>> = vec![Vec::new()];
            for &x in &s.inputs {
                let mut choices = vec![None];
                choices.extend(b.homs(self.q, self.i_obj[x]).iter().map(|&y| Some(y)));
                ins = ins
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut p = prefix.clone();
                            p.push(*c);
                            p
                        })
                    })
                    .collect();
            }
            for o in &outs {
                for i in &ins {
                    let k = Self::formal(*o, core, i.clone());
                    if !self.is_qq(&k) {
                        out.push(k);
                    }
                }
            }
        }
        out
    }

    fn unary_with_target(&self, y: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.i_mor
            .keys()
            .copied()
            .filter(move |&a| self.m.sig(a).output == y)
    }

    fn unary_with_source(&self, x: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.i_mor
            .keys()
            .copied()
            .filter(move |&a| self.m.sig(a).inputs[0] == x)
    }

    fn quotient(&self, keys: &[Key]) -> Quotient<Key> {
        let b = self.b;
        let mut q = Quotient::new();
        for k in keys {
            q.insert(k.clone());
        }
        for k in keys {
            let Key::Formal { out, core, ins } = k else {
                continue;
            };
            let s = self.m.sig(*core).clone();
            // (m ∘_j a, β) ~ (m, a ∘ β)
            for (j, slot) in ins.iter().enumerate() {
                let Some(eps) = slot else { continue };
                for a in self.unary_with_target(s.inputs[j]) {
                    let src = self.m.sig(a).inputs[0];
                    for &beta in b.homs(self.q, self.i_obj[src]) {
                        if b.compose(self.i_mor[&a], beta) == *eps {
                            let mut ins2 = ins.clone();
                            ins2[j] = Some(beta);
                            let other = Self::formal(*out, self.comp_at(*core, j, a), ins2);
                            q.insert(other.clone());
                            q.identify(k, &other);
                        }
                    }
                }
            }
            // (β, a ∘ m) ~ (β ∘ a, m)
            if let Some(eps) = out {
                for a in self.unary_with_source(s.output) {
                    let tgt = self.m.sig(a).output;
                    for &gamma in b.homs(self.i_obj[tgt], self.q) {
                        if b.compose(gamma, self.i_mor[&a]) == *eps {
                            let am = self.m.comp(a, &[*core]).expect("unary postcomposition");
                            let other = Self::formal(Some(gamma), am, ins.clone());
                            q.insert(other.clone());
                            q.identify(k, &other);
                        }
                    }
                }
            }
        }
        q
    }

    fn compose(&self, g: &Key, fs: &[Key]) -> Option<Key> {
        let b = self.b;
        let r = match g {
            Key::Q(bg) => match &fs[0] {
                Key::Q(bf) => Key::Q(b.compose(*bg, *bf)),
                Key::Formal { out, core, ins } => Self::formal(
                    Some(b.compose(*bg, out.expect("output q"))),
                    *core,
                    ins.clone(),
                ),
            },
            Key::Formal { out, core, ins } => {
                let gs = self.m.sig(*core);
                let mut parts = Vec::with_capacity(fs.len());
                let mut new_ins = Vec::new();
                for (j, f) in fs.iter().enumerate() {
                    match (ins[j], f) {
                        (Some(bj), Key::Q(bf)) => {
                            parts.push(self.m.identity(gs.inputs[j]));
                            new_ins.push(Some(b.compose(bj, *bf)));
                        }
                        (
                            Some(bj),
                            Key::Formal {
                                out: fo,
                                core: fc,
                                ins: fi,
                            },
                        ) => {
                            let wire = b.compose(bj, fo.expect("output q"));
                            let a = self.back[&wire];
                            parts.push(self.m.comp(a, &[*fc])?);
                            new_ins.extend_from_slice(fi);
                        }
                        (
                            None,
                            Key::Formal {
                                out: None,
                                core: fc,
                                ins: fi,
                            },
                        ) => {
                            parts.push(*fc);
                            new_ins.extend_from_slice(fi);
                        }
                        _ => unreachable!("ill-typed tuple"),
                    }
                }
                Self::formal(*out, self.m.comp(*core, &parts)?, new_ins)
            }
        };
        Some(self.normalize(r))
    }

    fn act(&self, sigma: &Perm, k: &Key) -> Key {
        match k {
            Key::Q(_) => k.clone(),
            Key::Formal { out, core, ins } => {
                let c = self.m.act(sigma, *core).expect("action is total");
                Self::formal(*out, c, sigma.permute(ins))
            }
        }
    }
}

fn check_span(m: &Multicat, i: &Functor) -> Result<()> {
    if !i.source.tables().same_tables(underlying_1(m).tables()) {
        return Err(Error::Invalid(
            "inclusion does not start at the underlying category".into(),
        ));
    }
    if !i.is_injective_on_objects() || !i.is_full_faithful() {
        return Err(Error::NotFullInclusion(
            "inclusion is not a full inclusion".into(),
        ));
    }
    Ok(())
}

/// One new object. `i : M₁ → B` must be a full inclusion missing exactly
/// one object of `B`.
pub fn pushout_multicat_along_e(m: &Arc<Multicat>, i: &Functor) -> Result<PushoutResult<Multicat>> {
    check_span(m, i)?;
    let b = &*i.target;
    let image: BTreeSet<Obj> = i.objects.iter().copied().collect();
    let missing: Vec<Obj> = (0..b.object_count())
        .filter(|o| !image.contains(o))
        .collect();
    if missing.len() != 1 {
        return Err(Error::Invalid(format!(
            "expected one new object, found {}",
            missing.len()
        )));
    }
    let q = missing[0];
    let unary = unary_morphisms(m);
    let mut old = vec![None; b.object_count()];
    for (x, &y) in i.objects.iter().enumerate() {
        old[y] = Some(x);
    }
    let mut i_mor = HashMap::new();
    let mut back = HashMap::new();
    for (a, &bm) in i.morphisms.iter().enumerate() {
        i_mor.insert(unary[a], bm);
        back.insert(bm, unary[a]);
    }
    let step = Step {
        m,
        b,
        q,
        old,
        i_obj: i.objects.clone(),
        i_mor,
        back,
    };
    let keys = step.keys();
    let mut quotient = step.quotient(&keys);
    let classes = quotient.classes();
    let mut class_of: BTreeMap<Key, usize> = BTreeMap::new();
    for (c, members) in classes.iter().enumerate() {
        for k in members {
            class_of.insert(k.clone(), c);
        }
    }
    let mut reps: Vec<Key> = classes.iter().map(|c| c[0].clone()).collect();
    let nf = reps.len();
    for &x in b.homs(q, q) {
        class_of.insert(Key::Q(x), reps.len());
        reps.push(Key::Q(x));
    }
    let class = |k: &Key| class_of[k];

    // objects: those of M, then q
    let nm = m.object_count();
    let mut taken: BTreeSet<String> = m.objects().iter().cloned().collect();
    let q_name = fresh_name(b.object_name(q).to_string(), &mut taken);
    let mut tb = TablesBuilder::new(format!("{}+{}", m.name(), q_name), m.bound());
    for o in m.objects() {
        tb.object(o.clone());
    }
    let nq = tb.object(q_name.clone());
    debug_assert_eq!(nq, nm);
    let mut names: BTreeSet<String> = m.morphisms().iter().map(|d| d.name.clone()).collect();
    names.insert(format!("id_{q_name}"));
    let wire = |x: &Option<Mor>| x.map_or("_".to_string(), |y| b.morphism_name(y).to_string());
    let mut index = vec![0; reps.len()];
    for (c, k) in reps.iter().enumerate() {
        let sig = step.sig(k);
        index[c] = match k {
            Key::Formal {
                out: None,
                core,
                ins,
            } if ins.iter().all(Option::is_none) => {
                if m.is_identity(*core) {
                    tb.identity(m.sig(*core).output)
                } else {
                    tb.morphism(m.morphism_name(*core), sig.inputs, sig.output)
                }
            }
            Key::Q(x) if b.is_identity(*x) => tb.identity(nq),
            Key::Q(x) => {
                let n = fresh_name(b.morphism_name(*x).to_string(), &mut names);
                tb.morphism(n, sig.inputs, sig.output)
            }
            Key::Formal { .. } => {
                let members = &classes[c];
                let simple = members.iter().find_map(|k| match k {
                    Key::Formal { out, core, ins } if m.is_identity(*core) => out.or(ins[0]),
                    _ => None,
                });
                let n = match simple {
                    Some(beta) => b.morphism_name(beta).to_string(),
                    None => {
                        let Key::Formal { out, core, ins } = k else {
                            unreachable!()
                        };
                        let mut n = String::new();
                        if out.is_some() {
                            n.push_str(&wire(out));
                            n.push('.');
                        }
                        n.push_str(m.morphism_name(*core));
                        if ins.iter().any(Option::is_some) {
                            let parts: Vec<String> = ins.iter().map(wire).collect();
                            n.push_str(&format!("{{{}}}", parts.join(";")));
                        }
                        n
                    }
                };
                let n = fresh_name(n, &mut names);
                tb.morphism(n, sig.inputs, sig.output)
            }
        };
    }

    // composition over every tuple within the bound
    let mut by_output: Vec<Vec<usize>> = vec![Vec::new(); nm + 1];
    let sigs: Vec<Signature> = reps.iter().map(|k| step.sig(k)).collect();
    for (c, s) in sigs.iter().enumerate() {
        by_output[s.output].push(c);
    }
    for (g, gk) in reps.iter().enumerate() {
        let mut tuples: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        for &x in &sigs[g].inputs {
            let mut next = Vec::new();
            for (t, ar) in &tuples {
                for &f in &by_output[x] {
                    let nar = ar + sigs[f].arity();
                    if nar <= m.bound() {
                        let mut t = t.clone();
                        t.push(f);
                        next.push((t, nar));
                    }
                }
            }
            tuples = next;
        }
        for (t, _) in tuples {
            let fs: Vec<Key> = t.iter().map(|&f| reps[f].clone()).collect();
            if let Some(r) = step.compose(gk, &fs) {
                tb.set_comp(
                    index[g],
                    t.iter().map(|&f| index[f]).collect(),
                    index[class(&r)],
                );
            }
        }
        if g < nf {
            for sigma in Perm::non_identity(sigs[g].arity()) {
                let r = step.act(&sigma, gk);
                tb.set_action(index[g], sigma, index[class(&r)]);
            }
        }
    }
    let built = tb.build();
    let n = Arc::new(Multicat::from_tables(built.tables));
    // composition was defined on representatives; make sure it is a multicategory
    let report = validate_multicat(&n);
    if !report.ok() {
        return Err(Error::IllDefined {
            bound: m.bound(),
            detail: report.to_string(),
        });
    }
    let to_n = |k: Key| built.morphisms[index[class(&step.normalize(k))]];

    let leg_c = MultiFunctor::new(
        m.clone(),
        n.clone(),
        (0..nm).map(|o| built.objects[o]).collect(),
        (0..m.morphism_count())
            .map(|c| to_n(Step::formal(None, c, vec![None; m.arity(c)])))
            .collect(),
    );
    let eb = Arc::new(embed_e(b, m.bound()));
    let leg_b = MultiFunctor::new(
        eb,
        n.clone(),
        (0..b.object_count())
            .map(|o| built.objects[step.old[o].unwrap_or(nm)])
            .collect(),
        (0..b.morphism_count())
            .map(|x| {
                let (s, t) = (b.src(x), b.tgt(x));
                to_n(match (step.old[s], step.old[t]) {
                    (None, None) => Key::Q(x),
                    (Some(_), Some(_)) => Step::formal(None, step.back[&x], vec![None]),
                    (Some(s), None) => Step::formal(Some(x), m.identity(s), vec![None]),
                    (None, Some(t)) => Step::formal(None, m.identity(t), vec![Some(x)]),
                })
            })
            .collect(),
    );
    Ok(PushoutResult {
        object: n,
        leg_b,
        leg_c,
        provenance: Provenance::Formula,
        exact: true,
    })
}

/// Any number of new objects, added one at a time in token order.
pub fn pushout_multicat_along_e_iter(
    m: &Arc<Multicat>,
    i: &Functor,
) -> Result<PushoutResult<Multicat>> {
    check_span(m, i)?;
    let b = &*i.target;
    let image: BTreeSet<Obj> = i.objects.iter().copied().collect();
    let mut new: Vec<Obj> = (0..b.object_count())
        .filter(|o| !image.contains(o))
        .collect();
    new.sort_by(|&x, &y| b.object_name(x).cmp(b.object_name(y)));
    let k = m.bound();
    if new.is_empty() {
        // i is an isomorphism; E(B) → M through its inverse
        let unary = unary_morphisms(m);
        let mut objects = vec![0; b.object_count()];
        for (x, &y) in i.objects.iter().enumerate() {
            objects[y] = x;
        }
        let mut morphisms = vec![0; b.morphism_count()];
        for (a, &y) in i.morphisms.iter().enumerate() {
            morphisms[y] = unary[a];
        }
        return Ok(PushoutResult {
            object: m.clone(),
            leg_b: MultiFunctor::new(Arc::new(embed_e(b, k)), m.clone(), objects, morphisms),
            leg_c: MultiFunctor::identity(m.clone()),
            provenance: Provenance::Formula,
            exact: true,
        });
    }
    let mut current = m.clone();
    let mut inclusion = i.clone();
    let mut leg_c = MultiFunctor::identity(m.clone());
    let mut kept: Vec<Obj> = i.objects.clone();
    let mut last = None;
    for (t, &qt) in new.iter().enumerate() {
        kept.push(qt);
        let bt = if t + 1 == new.len() {
            i.target.clone()
        } else {
            let u = ObjectMap::new(
                kept.iter().map(|&o| b.object_name(o).to_string()).collect(),
                kept.clone(),
            );
            Arc::new(FiniteCategory::from_tables(restrict_u(&u, b).tables))
        };
        // current₁ → B_t through the previous inclusion, matched by name
        let prev = &*inclusion.target;
        let objects = inclusion
            .objects
            .iter()
            .map(|&o| bt.object_index(prev.object_name(o)).unwrap())
            .collect();
        let morphisms = inclusion
            .morphisms
            .iter()
            .map(|&x| bt.morphism_index(prev.morphism_name(x)).unwrap())
            .collect();
        let step_i = Functor::new(inclusion.source.clone(), bt.clone(), objects, morphisms);
        let r = pushout_multicat_along_e(&current, &step_i)?;
        leg_c = leg_c.then(&r.leg_c);
        // N₁ ≅ B_t through the unary part of leg_b
        let n = r.object.clone();
        let n1 = Arc::new(underlying_1(&n));
        let n_unary = unary_morphisms(&n);
        let mut inv_obj = vec![0; n.object_count()];
        for (o, &x) in r.leg_b.objects.iter().enumerate() {
            inv_obj[x] = o;
        }
        let mut inv_mor = vec![usize::MAX; n.morphism_count()];
        for (x, &y) in r.leg_b.morphisms.iter().enumerate() {
            inv_mor[y] = x;
        }
        inclusion = Functor::new(
            n1,
            bt.clone(),
            inv_obj,
            n_unary.iter().map(|&x| inv_mor[x]).collect(),
        );
        current = n;
        last = Some(r);
    }
    let last = last.expect("at least one step");
    Ok(PushoutResult {
        object: last.object.clone(),
        leg_b: last.leg_b,
        leg_c,
        provenance: Provenance::Formula,
        exact: true,
    })
}
