//! Backtracking search for structure-preserving maps.
//!
//! Objects are assigned first, then morphisms in index order. A morphism
//! whose value is forced by an already-assigned composite or action is not
//! branched on. Solutions come out lexicographically ordered by object
//! assignment, then morphism assignment.

use std::sync::Arc;

use crate::error::{Budget, Error, Result, DEFAULT_BUDGET};
use crate::map::Map;
use crate::perm::Perm;
use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::{Mor, Obj, Tables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

#[derive(Clone, Debug)]
enum Con {
    Comp { g: Mor, fs: Vec<Mor>, h: Mor },
    Act { f: Mor, sigma: Perm, g: Mor },
}

/// A map-search problem from `source` to `target`.
#[derive(Clone, Debug)]
pub struct MapSearch<'a> {
    pub source: &'a Tables,
    pub target: &'a Tables,
    /// Allowed images per source object.
    pub object_domains: Vec<Vec<Obj>>,
    /// Allowed images per source morphism; `None` allows the whole hom.
    pub morphism_domains: Vec<Option<Vec<Mor>>>,
    /// Require injectivity on objects and on morphisms.
    pub injective: bool,
    pub budget: u64,
    /// Stop after this many solutions.
    pub limit: usize,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a Tables, target: &'a Tables) -> Self {
        MapSearch {
            source,
            target,
            object_domains: vec![(0..target.object_count()).collect(); source.object_count()],
            morphism_domains: vec![None; source.morphism_count()],
            injective: false,
            budget: DEFAULT_BUDGET,
            limit: usize::MAX,
        }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Restricts object `o` to the images in `allowed`.
    pub fn restrict_object(&mut self, o: Obj, allowed: &[Obj]) {
        self.object_domains[o].retain(|x| allowed.contains(x));
    }

    pub fn restrict_morphism(&mut self, m: Mor, allowed: &[Mor]) {
        let d = self.morphism_domains[m].get_or_insert_with(|| allowed.to_vec());
        d.retain(|x| allowed.contains(x));
    }

    pub fn run(&self) -> Result<Vec<Assignment>> {
        let s = self.source;
        let n = s.morphism_count();
        let mut attached: Vec<Vec<Con>> = vec![Vec::new(); n];
        let mut forcing: Vec<Vec<Con>> = vec![Vec::new(); n];
        for ((g, fs), &h) in s.comp_table() {
            let others = fs
                .iter()
                .copied()
                .chain(std::iter::once(*g))
                .max()
                .unwrap_or(*g);
            let con = Con::Comp {
                g: *g,
                fs: fs.clone(),
                h,
            };
            if h > others {
                forcing[h].push(con.clone());
            }
            attached[h.max(others)].push(con);
        }
        for ((f, sigma), &g) in s.action_table() {
            let con = Con::Act {
                f: *f,
                sigma: sigma.clone(),
                g,
            };
            if g > *f {
                forcing[g].push(con.clone());
            }
            attached[g.max(*f)].push(con);
        }
        let mut identity_of = vec![None; n];
        for (o, &id) in s.identities().iter().enumerate() {
            identity_of[id] = Some(o);
        }
        // morphisms whose signature is fully assigned once object `o` is
        let mut ready_at: Vec<Vec<Mor>> = vec![Vec::new(); s.object_count()];
        for m in 0..n {
            let sig = s.sig(m);
            let last = sig
                .inputs
                .iter()
                .copied()
                .chain(std::iter::once(sig.output))
                .max()
                .unwrap();
            ready_at[last].push(m);
        }
        let mut st = State {
            p: self,
            attached,
            forcing,
            identity_of,
            ready_at,
            objects: vec![usize::MAX; s.object_count()],
            morphisms: vec![usize::MAX; n],
            used_obj: vec![false; self.target.object_count()],
            used_mor: vec![false; self.target.morphism_count()],
            budget: Budget::new("map search", self.budget),
            out: Vec::new(),
        };
        st.assign_object(0)?;
        Ok(st.out)
    }
}

struct State<'p, 'a> {
    p: &'p MapSearch<'a>,
    attached: Vec<Vec<Con>>,
    forcing: Vec<Vec<Con>>,
    identity_of: Vec<Option<Obj>>,
    ready_at: Vec<Vec<Mor>>,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
    budget: Budget,
    out: Vec<Assignment>,
}

impl State<'_, '_> {
    fn done(&self) -> bool {
        self.out.len() >= self.p.limit
    }

    fn candidates(&self, m: Mor) -> Vec<Mor> {
        let s = self.p.source;
        let t = self.p.target;
        let sig = s.sig(m).map_objects(|o| self.objects[o]);
        let mut forced = None;
        if let Some(o) = self.identity_of[m] {
            forced = Some(t.identity(self.objects[o]));
        } else if let Some(con) = self.forcing[m].first() {
            let v = match con {
                Con::Comp { g, fs, .. } => {
                    let image: Vec<Mor> = fs.iter().map(|&f| self.morphisms[f]).collect();
                    t.comp(self.morphisms[*g], &image)
                }
                Con::Act { f, sigma, .. } => t.act(sigma, self.morphisms[*f]),
            };
            match v {
                Some(v) => forced = Some(v),
                None if sig.arity() <= t.bound() => return Vec::new(),
                None => {}
            }
        }
        let base: Vec<Mor> = match forced {
            Some(v) => {
                if t.sig(v) == &sig {
                    vec![v]
                } else {
                    Vec::new()
                }
            }
            None => t.hom(&sig).to_vec(),
        };
        base.into_iter()
            .filter(|v| {
                self.p.morphism_domains[m]
                    .as_ref()
                    .map_or(true, |d| d.contains(v))
            })
            .filter(|&v| !self.p.injective || !self.used_mor[v])
            .collect()
    }

    fn has_candidates(&self, m: Mor) -> bool {
        let sig = self.p.source.sig(m).map_objects(|o| self.objects[o]);
        let hom = self.p.target.hom(&sig);
        match &self.p.morphism_domains[m] {
            Some(d) => hom.iter().any(|v| d.contains(v)),
            None => !hom.is_empty(),
        }
    }

    fn assign_object(&mut self, o: Obj) -> Result<()> {
        if o == self.objects.len() {
            return self.assign_morphism(0);
        }
        for x in self.p.object_domains[o].clone() {
            if self.p.injective && self.used_obj[x] {
                continue;
            }
            self.budget.tick()?;
            self.objects[o] = x;
            if self.ready_at[o].iter().all(|&m| self.has_candidates(m)) {
                self.used_obj[x] = true;
                self.assign_object(o + 1)?;
                self.used_obj[x] = false;
            }
            if self.done() {
                break;
            }
        }
        self.objects[o] = usize::MAX;
        Ok(())
    }

    fn consistent(&self, m: Mor) -> bool {
        let t = self.p.target;
        self.attached[m].iter().all(|con| match con {
            Con::Comp { g, fs, h } => {
                let image: Vec<Mor> = fs.iter().map(|&f| self.morphisms[f]).collect();
                match t.comp(self.morphisms[*g], &image) {
                    Some(v) => v == self.morphisms[*h],
                    None => self.p.source.arity(*h) > t.bound(),
                }
            }
            Con::Act { f, sigma, g } => {
                t.act(sigma, self.morphisms[*f]) == Some(self.morphisms[*g])
            }
        })
    }

    fn assign_morphism(&mut self, m: Mor) -> Result<()> {
        if m == self.morphisms.len() {
            self.out.push(Assignment {
                objects: self.objects.clone(),
                morphisms: self.morphisms.clone(),
            });
            return Ok(());
        }
        for v in self.candidates(m) {
            self.budget.tick()?;
            self.morphisms[m] = v;
            if self.consistent(m) {
                self.used_mor[v] = true;
                self.assign_morphism(m + 1)?;
                self.used_mor[v] = false;
            }
            if self.done() {
                break;
            }
        }
        self.morphisms[m] = usize::MAX;
        Ok(())
    }
}

fn to_maps<S: Structure>(source: &Arc<S>, target: &Arc<S>, sols: Vec<Assignment>) -> Vec<Map<S>> {
    sols.into_iter()
        .map(|a| Map::new(source.clone(), target.clone(), a.objects, a.morphisms))
        .collect()
}

/// All maps `source → target` in canonical order.
pub fn enumerate_maps<S: Structure>(
    source: &Arc<S>,
    target: &Arc<S>,
    budget: u64,
) -> Result<Vec<Map<S>>> {
    let sols = MapSearch::new(source.tables(), target.tables())
        .budget(budget)
        .run()?;
    Ok(to_maps(source, target, sols))
}

pub fn enumerate_functors(
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
) -> Result<Vec<Map<FiniteCategory>>> {
    enumerate_maps(c, d, DEFAULT_BUDGET)
}

/// All multifunctors `m → n`; both sides must share the truncation bound.
pub fn enumerate_multifunctors(m: &Arc<Multicat>, n: &Arc<Multicat>) -> Result<Vec<Map<Multicat>>> {
    if m.bound() != n.bound() {
        return Err(Error::Invalid(format!(
            "truncation bounds differ ({} vs {})",
            m.bound(),
            n.bound()
        )));
    }
    enumerate_maps(m, n, DEFAULT_BUDGET)
}

pub fn count_maps<S: Structure>(source: &Arc<S>, target: &Arc<S>, budget: u64) -> Result<usize> {
    Ok(MapSearch::new(source.tables(), target.tables())
        .budget(budget)
        .run()?
        .len())
}

/// Cheap isomorphism invariant per object: sorted hom sizes in and out.
fn object_profile(t: &Tables, o: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for m in 0..t.morphism_count() {
        let sig = t.sig(m);
        if sig.output == o {
            ins.push(sig.arity());
        }
        if sig.inputs.contains(&o) {
            outs.push(sig.arity());
        }
    }
    ins.sort();
    outs.sort();
    (t.with_output(o).len(), ins, outs)
}

/// First isomorphism `a → b`, if any.
pub fn find_isomorphism<S: Structure>(
    a: &Arc<S>,
    b: &Arc<S>,
    budget: u64,
) -> Result<Option<Map<S>>> {
    let (ta, tb) = (a.tables(), b.tables());
    if ta.object_count() != tb.object_count()
        || ta.morphism_count() != tb.morphism_count()
        || ta.bound() != tb.bound()
    {
        return Ok(None);
    }
    let mut search = MapSearch::new(ta, tb).budget(budget).limit(1).injective();
    let pb: Vec<_> = (0..tb.object_count())
        .map(|o| object_profile(tb, o))
        .collect();
    for o in 0..ta.object_count() {
        let p = object_profile(ta, o);
        search.object_domains[o] = (0..tb.object_count()).filter(|&x| pb[x] == p).collect();
    }
    let mut sols = search.run()?;
    Ok(sols
        .pop()
        .map(|s| Map::new(a.clone(), b.clone(), s.objects, s.morphisms)))
}

pub fn are_isomorphic<S: Structure>(a: &Arc<S>, b: &Arc<S>) -> Result<bool> {
    Ok(find_isomorphism(a, b, DEFAULT_BUDGET)?.is_some())
}

/// An isomorphism `a → b` commuting with given maps out of a common
/// domain: `iso ∘ legs_a[j] = legs_b[j]` for every j.
pub fn find_isomorphism_under<S: Structure>(
    a: &Arc<S>,
    b: &Arc<S>,
    legs: &[(&Map<S>, &Map<S>)],
    budget: u64,
) -> Result<Option<Map<S>>> {
    let (ta, tb) = (a.tables(), b.tables());
    if ta.object_count() != tb.object_count()
        || ta.morphism_count() != tb.morphism_count()
        || ta.bound() != tb.bound()
    {
        return Ok(None);
    }
    let mut search = MapSearch::new(ta, tb).budget(budget).limit(1).injective();
    for (la, lb) in legs {
        for (x, &ax) in la.objects.iter().enumerate() {
            search.restrict_object(ax, &[lb.objects[x]]);
        }
        for (m, &am) in la.morphisms.iter().enumerate() {
            search.restrict_morphism(am, &[lb.morphisms[m]]);
        }
    }
    let mut sols = search.run()?;
    Ok(sols
        .pop()
        .map(|s| Map::new(a.clone(), b.clone(), s.objects, s.morphisms)))
}
