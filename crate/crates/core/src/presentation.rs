//! Presentations of truncated symmetric multicategories, closed by
//! congruence closure.
//!
//! Elements are generators plus formal composites and formal permuted
//! elements created on demand. Unit, group-action, associativity and
//! equivariance laws are enforced as identifications; missing composites
//! are created one layer per round. The closure is exact when a round
//! creates nothing.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::tables::{Mor, Obj, Signature, Tables, TablesBuilder};
use crate::union_find::UnionFind;

#[derive(Clone, Debug)]
enum Origin {
    Generator { rank: u8, name: String },
    Identity(Obj),
    Comp(usize, Vec<usize>),
    Act(usize, Perm),
}

#[derive(Clone, Debug)]
pub struct Presentation {
    bound: usize,
    objects: Vec<String>,
    sigs: Vec<Signature>,
    origins: Vec<Origin>,
    uf: UnionFind,
    identities: Vec<usize>,
    comp: HashMap<(usize, Vec<usize>), usize>,
    act: HashMap<(usize, Perm), usize>,
    unions: Vec<(usize, usize)>,
}

/// Closed presentation rendered as tables.
#[derive(Clone, Debug)]
pub struct Closure {
    pub tables: Tables,
    /// Final morphism index of every presentation element.
    pub element: Vec<Mor>,
    /// `true` when the closure reached a fixpoint.
    pub exact: bool,
}

/// Limits for [`Presentation::close`].
#[derive(Clone, Copy, Debug)]
pub struct CloseLimits {
    pub max_elements: usize,
    pub max_rounds: usize,
}

impl Default for CloseLimits {
    fn default() -> Self {
        CloseLimits {
            max_elements: 2000,
            max_rounds: 64,
        }
    }
}

impl Presentation {
    pub fn new(bound: usize, objects: Vec<String>) -> Self {
        let mut p = Presentation {
            bound,
            objects: Vec::new(),
            sigs: Vec::new(),
            origins: Vec::new(),
            uf: UnionFind::new(0),
            identities: Vec::new(),
            comp: HashMap::new(),
            act: HashMap::new(),
            unions: Vec::new(),
        };
        for o in objects {
            p.objects.push(o);
            let i = p.objects.len() - 1;
            let e = p.push(Signature::unary(i, i), Origin::Identity(i));
            p.identities.push(e);
        }
        for i in 0..p.identities.len() {
            let e = p.identities[i];
            p.comp.insert((e, vec![e]), e);
        }
        p
    }

    pub fn identity(&self, o: Obj) -> usize {
        self.identities[o]
    }

    pub fn len(&self) -> usize {
        self.sigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigs.is_empty()
    }

    pub fn sig(&self, e: usize) -> &Signature {
        &self.sigs[e]
    }

    fn push(&mut self, sig: Signature, origin: Origin) -> usize {
        let e = self.uf.push();
        self.sigs.push(sig.clone());
        self.origins.push(origin);
        let ids: Vec<usize> = sig
            .inputs
            .iter()
            .map(|&a| self.identities.get(a).copied().unwrap_or(e))
            .collect();
        if let Some(&out) = self.identities.get(sig.output) {
            self.comp.insert((out, vec![e]), e);
        }
        if sig.inputs.iter().all(|&a| a < self.identities.len()) {
            self.comp.insert((e, ids), e);
        }
        e
    }

    /// Adds a generator. Lower `rank` wins when naming a class.
    pub fn generator(&mut self, name: impl Into<String>, rank: u8, sig: Signature) -> usize {
        self.push(
            sig,
            Origin::Generator {
                rank,
                name: name.into(),
            },
        )
    }

    pub fn relate_comp(&mut self, g: usize, fs: Vec<usize>, h: usize) {
        self.set_comp(g, fs, h);
    }

    pub fn relate_act(&mut self, f: usize, sigma: Perm, g: usize) {
        if sigma.is_identity() {
            self.unions.push((f, g));
        } else {
            self.set_act(f, sigma, g);
        }
    }

    pub fn identify(&mut self, a: usize, b: usize) {
        self.unions.push((a, b));
    }

    fn set_comp(&mut self, g: usize, fs: Vec<usize>, h: usize) -> bool {
        match self.comp.get(&(g, fs.clone())) {
            Some(&x) => {
                if x != h {
                    self.unions.push((x, h));
                }
                false
            }
            None => {
                self.comp.insert((g, fs), h);
                true
            }
        }
    }

    fn set_act(&mut self, f: usize, sigma: Perm, g: usize) -> bool {
        if sigma.is_identity() {
            if f != g {
                self.unions.push((f, g));
            }
            return false;
        }
        match self.act.get(&(f, sigma.clone())) {
            Some(&x) => {
                if x != g {
                    self.unions.push((x, g));
                }
                false
            }
            None => {
                self.act.insert((f, sigma), g);
                true
            }
        }
    }

    fn get_act(&self, sigma: &Perm, f: usize) -> Option<usize> {
        if sigma.is_identity() {
            Some(f)
        } else {
            self.act.get(&(f, sigma.clone())).copied()
        }
    }

    /// Applies pending unions and re-keys the tables on representatives
    /// until stable (congruence closure).
    fn settle(&mut self) -> Result<bool> {
        let mut any = false;
        loop {
            let mut merged = false;
            for (a, b) in std::mem::take(&mut self.unions) {
                let (ra, rb) = (self.uf.find(a), self.uf.find(b));
                if ra == rb {
                    continue;
                }
                if self.sigs[ra] != self.sigs[rb] {
                    return Err(Error::Invalid(format!(
                        "identification of elements with different signatures ({ra} vs {rb})"
                    )));
                }
                self.uf.union(ra, rb);
                merged = true;
            }
            if !merged && any {
                return Ok(true);
            }
            if !merged {
                return Ok(false);
            }
            any = true;
            let old = std::mem::take(&mut self.comp);
            for ((g, fs), h) in old {
                let g = self.uf.find(g);
                let fs: Vec<usize> = fs.iter().map(|&f| self.uf.find(f)).collect();
                let h = self.uf.find(h);
                self.set_comp(g, fs, h);
            }
            let old = std::mem::take(&mut self.act);
            for ((f, s), g) in old {
                let f = self.uf.find(f);
                let g = self.uf.find(g);
                self.set_act(f, s, g);
            }
            let ids: Vec<usize> = self.identities.iter().map(|&e| self.uf.find(e)).collect();
            self.identities = ids;
        }
    }

    fn reps(&mut self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.uf.find(e) == e).collect()
    }

    fn reps_by_output(&mut self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for e in self.reps() {
            out[self.sigs[e].output].push(e);
        }
        out
    }

    fn tuples(&self, g: usize, by_output: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let inputs = &self.sigs[g].inputs;
        let mut out = vec![(Vec::new(), 0usize)];
        for &a in inputs {
            let mut next = Vec::new();
            for (t, ar) in &out {
                for &f in &by_output[a] {
                    let nar = ar + self.sigs[f].arity();
                    if nar <= self.bound {
                        let mut v = t.clone();
                        v.push(f);
                        next.push((v, nar));
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|(t, _)| t).collect()
    }

    /// One pass of law enforcement. Returns `true` if anything changed.
    fn derive(&mut self) -> bool {
        let mut changed = false;
        let reps = self.reps();
        // group action
        for &f in &reps {
            let k = self.sigs[f].arity();
            if k < 2 {
                continue;
            }
            let perms = Perm::all(k);
            for tau in &perms {
                let Some(x) = self.get_act(tau, f) else {
                    continue;
                };
                for sigma in &perms {
                    if let Some(y) = self.get_act(&sigma.compose(tau), f) {
                        changed |= self.set_act(x, sigma.clone(), y);
                    }
                }
            }
        }
        let entries: Vec<((usize, Vec<usize>), usize)> =
            self.comp.iter().map(|(k, v)| (k.clone(), *v)).collect();
        // equivariance, in both directions
        for ((g, fs), h) in &entries {
            let n = fs.len();
            let sizes_of = |fs: &[usize], sigs: &[Signature]| {
                fs.iter().map(|&f| sigs[f].arity()).collect::<Vec<_>>()
            };
            for sigma in Perm::non_identity(n) {
                // comp(σ·g; f) = σ⟨sizes⟩·comp(g; f∘σ) with f_j = fs[σ⁻¹(j)]
                let Some(sg) = self.get_act(&sigma, *g) else {
                    continue;
                };
                let inv = sigma.inverse();
                let f: Vec<usize> = (0..n).map(|j| fs[inv.apply(j)]).collect();
                let sizes = sizes_of(&f, &self.sigs);
                if let Some(v) = self.get_act(&sigma.blocks(&sizes), *h) {
                    changed |= self.set_comp(sg, f, v);
                }
            }
            let arities = sizes_of(fs, &self.sigs);
            let mut taus: Vec<Vec<Perm>> = vec![Vec::new()];
            for &k in &arities {
                let mut next = Vec::new();
                for t in &taus {
                    for p in Perm::all(k) {
                        let mut v = t.clone();
                        v.push(p);
                        next.push(v);
                    }
                }
                taus = next;
            }
            for t in taus {
                if t.iter().all(Perm::is_identity) {
                    continue;
                }
                let acted: Option<Vec<usize>> = fs
                    .iter()
                    .zip(&t)
                    .map(|(&f, p)| self.get_act(p, f))
                    .collect();
                let Some(acted) = acted else { continue };
                if let Some(v) = self.get_act(&Perm::direct_sum(&t), *h) {
                    changed |= self.set_comp(*g, acted, v);
                }
            }
        }
        // associativity
        let by_output = self.reps_by_output();
        for ((g, fs), h) in &entries {
            for hs in self.tuples(*h, &by_output) {
                let lhs = self.comp.get(&(*h, hs.clone())).copied();
                let mut inner = Vec::with_capacity(fs.len());
                let mut pos = 0;
                let mut complete = true;
                for &f in fs {
                    let k = self.sigs[f].arity();
                    match self.comp.get(&(f, hs[pos..pos + k].to_vec())) {
                        Some(&x) => inner.push(x),
                        None => complete = false,
                    }
                    pos += k;
                }
                let rhs = if complete {
                    self.comp.get(&(*g, inner.clone())).copied()
                } else {
                    None
                };
                match (lhs, rhs) {
                    (Some(l), Some(r)) if l != r => {
                        self.unions.push((l, r));
                        changed = true;
                    }
                    (Some(l), None) if complete => changed |= self.set_comp(*g, inner, l),
                    (None, Some(r)) => changed |= self.set_comp(*h, hs, r),
                    _ => {}
                }
            }
        }
        changed
    }

    fn derive_to_fixpoint(&mut self) -> Result<()> {
        loop {
            self.settle()?;
            let changed = self.derive();
            let merged = self.settle()?;
            if !changed && !merged {
                return Ok(());
            }
        }
    }

    /// Creates missing permuted elements; returns how many were created.
    fn create_actions(&mut self) -> usize {
        let mut created = 0;
        for f in self.reps() {
            let k = self.sigs[f].arity();
            if k < 2 {
                continue;
            }
            for sigma in Perm::non_identity(k) {
                let f = self.uf.find(f);
                if self.get_act(&sigma, f).is_none() {
                    let e = self.push(self.sigs[f].permuted(&sigma), Origin::Act(f, sigma.clone()));
                    self.act.insert((f, sigma), e);
                    created += 1;
                }
            }
        }
        created
    }

    fn has_missing(&mut self) -> bool {
        let by_output = self.reps_by_output();
        self.reps().into_iter().any(|g| {
            self.tuples(g, &by_output)
                .into_iter()
                .any(|fs| !self.comp.contains_key(&(g, fs)))
        })
    }

    /// Creates one layer of missing composites; returns how many.
    fn create_composites(&mut self, room: usize) -> usize {
        let by_output = self.reps_by_output();
        let mut created = 0;
        for g in self.reps() {
            for fs in self.tuples(g, &by_output) {
                if self.comp.contains_key(&(g, fs.clone())) {
                    continue;
                }
                if created >= room {
                    return created;
                }
                let mut inputs = Vec::new();
                for &f in &fs {
                    inputs.extend_from_slice(&self.sigs[f].inputs);
                }
                let sig = Signature::new(inputs, self.sigs[g].output);
                let e = self.push(sig, Origin::Comp(g, fs.clone()));
                self.comp.insert((g, fs), e);
                created += 1;
            }
        }
        created
    }

    /// Closes under composition and the action within the bound.
    pub fn close(mut self, name: &str, limits: CloseLimits) -> Result<Closure> {
        let mut exact = false;
        for _ in 0..=limits.max_rounds {
            self.derive_to_fixpoint()?;
            let room = limits.max_elements.saturating_sub(self.len());
            if self.create_actions() > 0 {
                if self.len() > limits.max_elements {
                    break;
                }
                continue;
            }
            if room == 0 {
                exact = !self.has_missing();
                break;
            }
            if self.create_composites(room) == 0 {
                exact = true;
                break;
            }
        }
        if !exact {
            self.derive_to_fixpoint()?;
        }
        Ok(self.render(name, exact))
    }

    fn class_name(&mut self, e: usize, memo: &mut HashMap<usize, String>) -> String {
        let r = self.uf.find(e);
        if let Some(n) = memo.get(&r) {
            return n.clone();
        }
        let members: Vec<usize> = (0..self.len()).filter(|&x| self.uf.find(x) == r).collect();
        let mut best: Option<(u8, String)> = None;
        for &m in &members {
            let cand = match &self.origins[m] {
                Origin::Identity(o) => Some((0, format!("id_{}", self.objects[*o]))),
                Origin::Generator { rank, name } => Some((rank + 1, name.clone())),
                _ => None,
            };
            if let Some(c) = cand {
                if best.as_ref().map_or(true, |b| &c < b) {
                    best = Some(c);
                }
            }
        }
        let name = match best {
            Some((_, n)) => n,
            None => {
                let first = members[0];
                match self.origins[first].clone() {
                    Origin::Comp(g, fs) => {
                        let g = self.class_name(g, memo);
                        let fs: Vec<String> =
                            fs.iter().map(|&f| self.class_name(f, memo)).collect();
                        format!("{g}{{{}}}", fs.join(";"))
                    }
                    Origin::Act(f, sigma) => {
                        let f = self.class_name(f, memo);
                        let tag: Vec<String> =
                            sigma.images().iter().map(|i| (i + 1).to_string()).collect();
                        format!("{f}@{}", tag.join("."))
                    }
                    _ => unreachable!("named origins handled above"),
                }
            }
        };
        memo.insert(r, name.clone());
        name
    }

    fn render(mut self, name: &str, exact: bool) -> Closure {
        let reps = self.reps();
        let mut memo = HashMap::new();
        let mut b = TablesBuilder::new(name, self.bound);
        for o in &self.objects {
            b.object(o.clone());
        }
        let mut index: BTreeMap<usize, Mor> = BTreeMap::new();
        for (o, &id) in self.identities.clone().iter().enumerate() {
            index.insert(self.uf.find(id), b.identity(o));
        }
        for &r in &reps {
            if index.contains_key(&r) {
                continue;
            }
            let n = self.class_name(r, &mut memo);
            let sig = self.sigs[r].clone();
            index.insert(r, b.morphism(n, sig.inputs, sig.output));
        }
        for ((g, fs), h) in &self.comp {
            b.set_comp(index[g], fs.iter().map(|f| index[f]).collect(), index[h]);
        }
        for ((f, s), g) in &self.act {
            b.set_action(index[f], s.clone(), index[g]);
        }
        let built = b.build();
        let element = (0..self.len())
            .map(|e| {
                let r = self.uf.find(e);
                built.morphisms[index[&r]]
            })
            .collect();
        Closure {
            tables: built.tables,
            element,
            exact,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_closes_to_two_elements() {
        let mut p = Presentation::new(1, vec!["*".into()]);
        let e = p.generator("e", 0, Signature::unary(0, 0));
        p.relate_comp(e, vec![e], e);
        let c = p.close("e", CloseLimits::default()).unwrap();
        assert!(c.exact);
        assert_eq!(c.tables.morphism_count(), 2);
    }

    #[test]
    fn free_binary_operation_gets_its_orbit() {
        let mut p = Presentation::new(2, vec!["a".into()]);
        p.generator("m", 0, Signature::new(vec![0, 0], 0));
        let c = p.close("m", CloseLimits::default()).unwrap();
        assert!(c.exact);
        assert_eq!(c.tables.morphism_count(), 3);
        assert!(c.tables.morphism_index("m@2.1").is_some());
    }

    #[test]
    fn free_product_of_two_involutions_runs_out() {
        let mut p = Presentation::new(1, vec!["*".into()]);
        let a = p.generator("a", 0, Signature::unary(0, 0));
        let b = p.generator("b", 0, Signature::unary(0, 0));
        let id = p.identity(0);
        p.relate_comp(a, vec![a], id);
        p.relate_comp(b, vec![b], id);
        let limits = CloseLimits {
            max_elements: 200,
            max_rounds: 64,
        };
        let c = p.close("z2*z2", limits).unwrap();
        assert!(!c.exact);
    }
}
