//! Pushouts of categories along full and faithful inclusions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::coend::{coend_set, Profunctor};
use super::oracle::{bounded_pushout_oracle, OracleLimits};
use super::{fresh_name, Provenance, PushoutResult};
use crate::constructions::{factor_through_image, restrict_u, ObjectMap};
use crate::error::{Error, Result};
use crate::map::Functor;
use crate::structure::{FiniteCategory, Structure};
use crate::tables::{Mor, Obj, TablesBuilder};

/// Inverse of a full and faithful functor on one hom: `C(f a, f a') → A(a, a')`.
fn preimage(f: &Functor, a: Obj, a2: Obj, c: Mor) -> Mor {
    *f.source
        .homs(a, a2)
        .iter()
        .find(|&&m| f.morphisms[m] == c)
        .expect("full functor has a preimage")
}

/// `∫^{x∈A} B(x, q) × C(p, f x)` for the single new object `q`.
struct IntoQ<'a> {
    f: &'a Functor,
    i: &'a Functor,
    q: Obj,
    p: Obj,
}

impl Profunctor for IntoQ<'_> {
    type Elem = (Mor, Mor);
    fn elements(&self, x: Obj, y: Obj) -> Vec<(Mor, Mor)> {
        let b = &self.i.target;
        let c = &self.f.target;
        let mut out = Vec::new();
        for &beta in b.homs(self.i.objects[x], self.q) {
            for &gamma in c.homs(self.p, self.f.objects[y]) {
                out.push((beta, gamma));
            }
        }
        out
    }
    fn left(&self, h: Mor, w: &(Mor, Mor)) -> (Mor, Mor) {
        (self.i.target.compose(w.0, self.i.morphisms[h]), w.1)
    }
    fn right(&self, h: Mor, w: &(Mor, Mor)) -> (Mor, Mor) {
        (w.0, self.f.target.compose(self.f.morphisms[h], w.1))
    }
}

/// `∫^{x∈A} C(f x, p) × B(q, x)`, elements stored as `(γ, β)`.
struct OutOfQ<'a> {
    f: &'a Functor,
    i: &'a Functor,
    q: Obj,
    p: Obj,
}

impl Profunctor for OutOfQ<'_> {
    type Elem = (Mor, Mor);
    fn elements(&self, x: Obj, y: Obj) -> Vec<(Mor, Mor)> {
        let b = &self.i.target;
        let c = &self.f.target;
        let mut out = Vec::new();
        for &gamma in c.homs(self.f.objects[x], self.p) {
            for &beta in b.homs(self.q, self.i.objects[y]) {
                out.push((gamma, beta));
            }
        }
        out
    }
    fn left(&self, h: Mor, w: &(Mor, Mor)) -> (Mor, Mor) {
        (self.f.target.compose(w.0, self.f.morphisms[h]), w.1)
    }
    fn right(&self, h: Mor, w: &(Mor, Mor)) -> (Mor, Mor) {
        (w.0, self.i.target.compose(self.i.morphisms[h], w.1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum DElem {
    C(Mor),
    /// `B(q, q)`
    Q(Mor),
    /// class of `(β : x → q, γ : p → f x)`
    Into(usize, Obj),
    /// class of `(γ : f x → p, β : q → x)`
    Out(usize, Obj),
}

/// One step of the full and faithful case: `i` adds exactly one object.
fn one_object_step(f: &Functor, i: &Functor) -> Result<PushoutResult<FiniteCategory>> {
    let a = &f.source;
    let b = &i.target;
    let c = &f.target;
    let image: BTreeSet<Obj> = i.objects.iter().copied().collect();
    let q = (0..b.object_count())
        .find(|o| !image.contains(o))
        .expect("one new object");
    // i⁻¹ on objects
    let mut i_inv = vec![usize::MAX; b.object_count()];
    for (x, &y) in i.objects.iter().enumerate() {
        i_inv[y] = x;
    }

    let nc = c.object_count();
    let mut into = Vec::with_capacity(nc);
    let mut out = Vec::with_capacity(nc);
    for p in 0..nc {
        into.push(coend_set(a, &IntoQ { f, i, q, p }));
        out.push(coend_set(a, &OutOfQ { f, i, q, p }));
    }

    let mut taken: BTreeSet<String> = c.objects().iter().cloned().collect();
    let q_name = fresh_name(b.object_name(q).to_string(), &mut taken);
    let mut tb = TablesBuilder::new(format!("{}+{}", c.name(), q_name), 1);
    for o in c.objects() {
        tb.object(o.clone());
    }
    let mut names: BTreeSet<String> = c.morphisms().iter().map(|d| d.name.clone()).collect();
    names.insert(format!("id_{q_name}"));
    let dq = tb.object(q_name);
    let mut index: BTreeMap<DElem, Mor> = BTreeMap::new();
    for m in 0..c.morphism_count() {
        let x = if c.is_identity(m) {
            tb.identity(c.src(m))
        } else {
            tb.morphism(c.morphism_name(m), vec![c.src(m)], c.tgt(m))
        };
        index.insert(DElem::C(m), x);
    }
    for &m in b.homs(q, q) {
        let x = if b.is_identity(m) {
            tb.identity(dq)
        } else {
            let n = fresh_name(b.morphism_name(m).to_string(), &mut names);
            tb.morphism(n, vec![dq], dq)
        };
        index.insert(DElem::Q(m), x);
    }
    for p in 0..nc {
        for (k, class) in into[p].classes.iter().enumerate() {
            let (_, (beta, gamma)) = &class[0];
            let n = element_name(b.morphism_name(*beta), c, *gamma, true);
            let n = fresh_name(n, &mut names);
            index.insert(DElem::Into(k, p), tb.morphism(n, vec![p], dq));
        }
        for (k, class) in out[p].classes.iter().enumerate() {
            let (_, (gamma, beta)) = &class[0];
            let n = element_name(b.morphism_name(*beta), c, *gamma, false);
            let n = fresh_name(n, &mut names);
            index.insert(DElem::Out(k, p), tb.morphism(n, vec![dq], p));
        }
    }

    let into_class = |p: Obj, x: Obj, beta: Mor, gamma: Mor| {
        DElem::Into(into[p].injection[&(x, (beta, gamma))], p)
    };
    let out_class = |p: Obj, x: Obj, gamma: Mor, beta: Mor| {
        DElem::Out(out[p].injection[&(x, (gamma, beta))], p)
    };

    // composition g ∘ f on representatives
    let elems: Vec<DElem> = index.keys().cloned().collect();
    let src = |e: &DElem| match e {
        DElem::C(m) => c.src(*m),
        DElem::Q(_) | DElem::Out(..) => nc,
        DElem::Into(_, p) => *p,
    };
    let tgt = |e: &DElem| match e {
        DElem::C(m) => c.tgt(*m),
        DElem::Q(_) | DElem::Into(..) => nc,
        DElem::Out(_, p) => *p,
    };
    let rep_into = |k: usize, p: Obj| into[p].classes[k][0].clone();
    let rep_out = |k: usize, p: Obj| out[p].classes[k][0].clone();
    for g in &elems {
        for h in &elems {
            if src(g) != tgt(h) {
                continue;
            }
            let r = match (g, h) {
                (DElem::C(g), DElem::C(h)) => DElem::C(c.compose(*g, *h)),
                (DElem::Into(k, p), DElem::C(h)) => {
                    let (x, (beta, gamma)) = rep_into(*k, *p);
                    into_class(c.src(*h), x, beta, c.compose(gamma, *h))
                }
                (DElem::C(g), DElem::Out(k, p)) => {
                    let (x, (gamma, beta)) = rep_out(*k, *p);
                    out_class(c.tgt(*g), x, c.compose(*g, gamma), beta)
                }
                (DElem::Q(g), DElem::Into(k, p)) => {
                    let (x, (beta, gamma)) = rep_into(*k, *p);
                    into_class(*p, x, b.compose(*g, beta), gamma)
                }
                (DElem::Out(k, p), DElem::Q(h)) => {
                    let (x, (gamma, beta)) = rep_out(*k, *p);
                    out_class(*p, x, gamma, b.compose(beta, *h))
                }
                (DElem::Q(g), DElem::Q(h)) => DElem::Q(b.compose(*g, *h)),
                (DElem::Out(k2, p2), DElem::Into(k1, p1)) => {
                    // [γ', β'] ∘ [β, γ] = γ' ∘ f(i⁻¹(β' ∘ β)) ∘ γ
                    let (x, (beta, gamma)) = rep_into(*k1, *p1);
                    let (x2, (gamma2, beta2)) = rep_out(*k2, *p2);
                    let bb = b.compose(beta2, beta);
                    let a_mor = preimage(i, x, x2, bb);
                    DElem::C(c.compose(gamma2, c.compose(f.morphisms[a_mor], gamma)))
                }
                (DElem::Into(k1, p1), DElem::Out(k2, p2)) => {
                    // [β, γ] ∘ [γ', β'] = β ∘ i(f⁻¹(γ ∘ γ')) ∘ β'
                    let (x, (beta, gamma)) = rep_into(*k1, *p1);
                    let (x2, (gamma2, beta2)) = rep_out(*k2, *p2);
                    let cc = c.compose(gamma, gamma2);
                    let a_mor = preimage(f, x2, x, cc);
                    DElem::Q(b.compose(beta, b.compose(i.morphisms[a_mor], beta2)))
                }
                _ => unreachable!("composable pair of unexpected shape"),
            };
            tb.set_comp(index[g], vec![index[h]], index[&r]);
        }
    }
    let built = tb.build();
    let d = Arc::new(FiniteCategory::from_tables(built.tables));
    let to_d = |e: &DElem| built.morphisms[index[e]];

    let leg_c = Functor::new(
        f.target.clone(),
        d.clone(),
        (0..nc).map(|o| built.objects[o]).collect(),
        (0..c.morphism_count())
            .map(|m| to_d(&DElem::C(m)))
            .collect(),
    );
    let mut b_objects = vec![0; b.object_count()];
    for o in 0..b.object_count() {
        b_objects[o] = if o == q {
            built.objects[dq]
        } else {
            built.objects[f.objects[i_inv[o]]]
        };
    }
    let mut b_morphisms = vec![0; b.morphism_count()];
    for m in 0..b.morphism_count() {
        let (s, t) = (b.src(m), b.tgt(m));
        let e = match (s == q, t == q) {
            (true, true) => DElem::Q(m),
            (false, false) => DElem::C(f.morphisms[preimage(i, i_inv[s], i_inv[t], m)]),
            (false, true) => {
                let x = i_inv[s];
                let p = f.objects[x];
                into_class(p, x, m, c.identity(p))
            }
            (true, false) => {
                let x = i_inv[t];
                let p = f.objects[x];
                out_class(p, x, c.identity(p), m)
            }
        };
        b_morphisms[m] = to_d(&e);
    }
    let leg_b = Functor::new(i.target.clone(), d.clone(), b_objects, b_morphisms);
    Ok(PushoutResult {
        object: d,
        leg_b,
        leg_c,
        provenance: Provenance::Formula,
        exact: true,
    })
}

/// Name of a coend class from its representative: the `B` element alone
/// when the `C` part is an identity, else `β.γ` (into `q`) or `γ.β`.
fn element_name(beta: &str, c: &FiniteCategory, gamma: Mor, into: bool) -> String {
    if c.is_identity(gamma) {
        beta.to_string()
    } else if into {
        format!("{beta}.{}", c.morphism_name(gamma))
    } else {
        format!("{}.{beta}", c.morphism_name(gamma))
    }
}

fn check_inclusion(i: &Functor) -> Result<()> {
    if !i.is_injective_on_objects() {
        return Err(Error::NotFullInclusion("not injective on objects".into()));
    }
    if !i.is_full_faithful() {
        return Err(Error::NotFullInclusion("not full and faithful".into()));
    }
    Ok(())
}

/// Pushout of `C ←f A →i B` for `i` a full and faithful inclusion.
///
/// When `f` is full and faithful the objects of `B` outside the image of
/// `i` are added one at a time in token order using the coend formulas.
/// Otherwise `f` is factored through its image; the identity-on-objects
/// part is pushed out with the bounded oracle, then the formulas apply.
pub fn pushout_cat_ff(
    f: &Functor,
    i: &Functor,
    limits: OracleLimits,
) -> Result<PushoutResult<FiniteCategory>> {
    if let Some(p) = f.problems().first() {
        return Err(Error::Invalid(format!("f is not a functor: {p}")));
    }
    check_inclusion(i)?;
    if !f.is_full_faithful() {
        let (f_u, incl) = factor_through_image(f);
        let first = bounded_pushout_oracle(&f_u, i, limits)?;
        check_inclusion(&first.leg_c).map_err(|e| Error::Invalid(format!("oracle leg: {e}")))?;
        let second = pushout_cat_ff(&incl, &first.leg_c, limits)?;
        return Ok(PushoutResult {
            object: second.object.clone(),
            leg_b: first.leg_b.then(&second.leg_b),
            leg_c: second.leg_c,
            provenance: Provenance::Oracle,
            exact: first.exact && second.exact,
        });
    }
    let b = &i.target;
    let image: BTreeSet<Obj> = i.objects.iter().copied().collect();
    let mut new: Vec<Obj> = (0..b.object_count())
        .filter(|o| !image.contains(o))
        .collect();
    new.sort_by(|&x, &y| b.object_name(x).cmp(b.object_name(y)));
    if new.is_empty() {
        // i is an isomorphism: D = C
        let mut inv = vec![0; b.morphism_count()];
        for (m, &n) in i.morphisms.iter().enumerate() {
            inv[n] = f.morphisms[m];
        }
        let mut objs = vec![0; b.object_count()];
        for (x, &y) in i.objects.iter().enumerate() {
            objs[y] = f.objects[x];
        }
        return Ok(PushoutResult {
            object: f.target.clone(),
            leg_b: Functor::new(i.target.clone(), f.target.clone(), objs, inv),
            leg_c: Functor::identity(f.target.clone()),
            provenance: Provenance::Formula,
            exact: true,
        });
    }
    // B_t: full subcategory on i(A) ∪ {q_1, ..., q_t}
    let mut current_f = f.clone();
    let mut current_i = i.clone();
    let mut leg_c = Functor::identity(f.target.clone());
    let mut kept: Vec<Obj> = i.objects.clone();
    let mut step = None;
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
        // inclusion of the previous stage into B_t, matched by name
        let prev = current_i.target.clone();
        let incl = if t == 0 {
            let objects = i
                .objects
                .iter()
                .map(|&o| bt.object_index(b.object_name(o)).unwrap())
                .collect();
            let morphisms = i
                .morphisms
                .iter()
                .map(|&m| bt.morphism_index(b.morphism_name(m)).unwrap())
                .collect();
            Functor::new(f.source.clone(), bt.clone(), objects, morphisms)
        } else {
            let objects = (0..prev.object_count())
                .map(|o| bt.object_index(prev.object_name(o)).unwrap())
                .collect();
            let morphisms = (0..prev.morphism_count())
                .map(|m| bt.morphism_index(prev.morphism_name(m)).unwrap())
                .collect();
            Functor::new(prev.clone(), bt.clone(), objects, morphisms)
        };
        let r = one_object_step(&current_f, &incl)?;
        leg_c = leg_c.then(&r.leg_c);
        current_f = r.leg_b.clone();
        current_i = incl;
        step = Some(r);
    }
    let last = step.expect("at least one step");
    Ok(PushoutResult {
        object: last.object.clone(),
        leg_b: last.leg_b,
        leg_c,
        provenance: Provenance::Formula,
        exact: true,
    })
}
