//! Raw composition tables shared by finite categories and truncated
//! symmetric multicategories.
//!
//! A category is stored as a multicategory whose morphisms are all unary and
//! whose arity bound is 1. Tables are plain data: nothing here checks the
//! axioms (see [`crate::validate`]), so malformed tables can be represented
//! and reported rather than rejected.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::perm::Perm;

pub type Obj = usize;
pub type Mor = usize;

/// `(a₁, ..., a_k; b)`: input objects and output object of a morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub inputs: Vec<Obj>,
    pub output: Obj,
}

impl Signature {
    pub fn new(inputs: Vec<Obj>, output: Obj) -> Self {
        Signature { inputs, output }
    }

    pub fn unary(src: Obj, tgt: Obj) -> Self {
        Signature {
            inputs: vec![src],
            output: tgt,
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// The signature of `σ·f` when `f` has this signature.
    pub fn permuted(&self, sigma: &Perm) -> Signature {
        Signature {
            inputs: sigma.permute(&self.inputs),
            output: self.output,
        }
    }

    pub fn map_objects(&self, f: impl Fn(Obj) -> Obj) -> Signature {
        Signature {
            inputs: self.inputs.iter().map(|&o| f(o)).collect(),
            output: f(self.output),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: String,
    pub sig: Signature,
}

/// Objects, morphisms, identities, Σ_k action and composition.
///
/// `action` holds entries for non-identity permutations only; the identity
/// permutation always acts trivially. `comp` maps `(g, [f₁..fₙ])` to the
/// composite `g(f₁, ..., fₙ)` and is expected to be defined exactly when the
/// tuple is composable and the result arity is at most `bound`.
#[derive(Clone, Debug)]
pub struct Tables {
    name: String,
    bound: usize,
    objects: Vec<String>,
    morphisms: Vec<MorphismDecl>,
    identities: Vec<Mor>,
    action: BTreeMap<(Mor, Perm), Mor>,
    comp: BTreeMap<(Mor, Vec<Mor>), Mor>,
    homs: HashMap<Signature, Vec<Mor>>,
    by_output: Vec<Vec<Mor>>,
    /// `comp` keyed by the flat slice `[g, f₁, ..., fₙ]`, built on first use.
    flat: OnceLock<HashMap<Vec<Mor>, Mor>>,
}

impl PartialEq for Tables {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_tables(other)
    }
}

impl Tables {
    /// Assembles tables without checking them.
    pub fn from_parts(
        name: impl Into<String>,
        bound: usize,
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<Mor>,
        action: BTreeMap<(Mor, Perm), Mor>,
        comp: BTreeMap<(Mor, Vec<Mor>), Mor>,
    ) -> Self {
        let mut t = Tables {
            name: name.into(),
            bound,
            objects,
            morphisms,
            identities,
            action,
            comp,
            homs: HashMap::new(),
            by_output: Vec::new(),
            flat: OnceLock::new(),
        };
        t.reindex();
        t
    }

    fn reindex(&mut self) {
        self.homs.clear();
        self.by_output = vec![Vec::new(); self.objects.len()];
        for (m, decl) in self.morphisms.iter().enumerate() {
            self.homs.entry(decl.sig.clone()).or_default().push(m);
            if let Some(v) = self.by_output.get_mut(decl.sig.output) {
                v.push(m);
            }
        }
    }

    /// Table identity, ignoring the display name.
    pub fn same_tables(&self, other: &Self) -> bool {
        self.bound == other.bound
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.action == other.action
            && self.comp == other.comp
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphisms(&self) -> &[MorphismDecl] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|d| d.name == name)
    }

    pub fn sig(&self, m: Mor) -> &Signature {
        &self.morphisms[m].sig
    }

    pub fn arity(&self, m: Mor) -> usize {
        self.morphisms[m].sig.arity()
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let s = self.sig(m);
        s.arity() == 1 && self.identities.get(s.output) == Some(&m)
    }

    pub fn action_table(&self) -> &BTreeMap<(Mor, Perm), Mor> {
        &self.action
    }

    pub fn comp_table(&self) -> &BTreeMap<(Mor, Vec<Mor>), Mor> {
        &self.comp
    }

    pub fn identities_mut(&mut self) -> &mut Vec<Mor> {
        &mut self.identities
    }

    pub fn action_mut(&mut self) -> &mut BTreeMap<(Mor, Perm), Mor> {
        &mut self.action
    }

    pub fn comp_mut(&mut self) -> &mut BTreeMap<(Mor, Vec<Mor>), Mor> {
        self.flat = OnceLock::new();
        &mut self.comp
    }

    /// Morphisms with exactly this signature, in index order.
    pub fn hom(&self, sig: &Signature) -> &[Mor] {
        self.homs.get(sig).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn hom_unary(&self, a: Obj, b: Obj) -> &[Mor] {
        self.hom(&Signature::unary(a, b))
    }

    /// Morphisms whose output is `o`.
    pub fn with_output(&self, o: Obj) -> &[Mor] {
        self.by_output.get(o).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn comp(&self, g: Mor, fs: &[Mor]) -> Option<Mor> {
        let flat = self.flat.get_or_init(|| {
            self.comp
                .iter()
                .map(|((g, fs), &h)| {
                    let mut key = Vec::with_capacity(fs.len() + 1);
                    key.push(*g);
                    key.extend_from_slice(fs);
                    (key, h)
                })
                .collect()
        });
        let mut buf = [0; 8];
        if fs.len() < buf.len() {
            buf[0] = g;
            buf[1..=fs.len()].copy_from_slice(fs);
            flat.get(&buf[..=fs.len()]).copied()
        } else {
            let mut key = vec![g];
            key.extend_from_slice(fs);
            flat.get(key.as_slice()).copied()
        }
    }

    /// Unary composite `g ∘ f`.
    pub fn then(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.comp(g, &[f])
    }

    /// `σ·f`; the identity permutation acts trivially.
    pub fn act(&self, sigma: &Perm, f: Mor) -> Option<Mor> {
        if sigma.is_identity() {
            Some(f)
        } else {
            self.action.get(&(f, sigma.clone())).copied()
        }
    }

    /// Signature of `g(f₁, ..., fₙ)` if the tuple is composable.
    pub fn composite_signature(&self, g: Mor, fs: &[Mor]) -> Option<Signature> {
        let gs = self.morphisms.get(g)?;
        if gs.sig.arity() != fs.len() {
            return None;
        }
        let mut inputs = Vec::new();
        for (j, &f) in fs.iter().enumerate() {
            let fd = self.morphisms.get(f)?;
            if fd.sig.output != gs.sig.inputs[j] {
                return None;
            }
            inputs.extend_from_slice(&fd.sig.inputs);
        }
        Some(Signature::new(inputs, gs.sig.output))
    }

    /// Every tuple composable with `g` whose composite has arity at most
    /// `bound`, in lexicographic index order.
    pub fn composable_tuples(&self, g: Mor) -> Vec<Vec<Mor>> {
        let inputs = &self.morphisms[g].sig.inputs;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(inputs.len());
        self.tuples_rec(inputs, 0, &mut cur, &mut out);
        out
    }

    fn tuples_rec(
        &self,
        inputs: &[Obj],
        arity: usize,
        cur: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
    ) {
        if cur.len() == inputs.len() {
            out.push(cur.clone());
            return;
        }
        for &f in self.with_output(inputs[cur.len()]) {
            let a = arity + self.arity(f);
            if a > self.bound {
                continue;
            }
            cur.push(f);
            self.tuples_rec(inputs, a, cur, out);
            cur.pop();
        }
    }

    /// All signatures over the objects with arity at most `bound`.
    pub fn signatures(&self, bound: usize) -> Vec<Signature> {
        all_signatures(self.objects.len(), bound)
    }

    /// Drops all morphisms of arity greater than `k`.
    pub fn truncate(&self, k: usize) -> Tables {
        self.restrict_morphisms(|m| self.arity(m) <= k, k.min(self.bound))
    }

    /// Same tables with a different arity bound.
    pub fn with_bound(&self, bound: usize) -> Tables {
        let mut t = self.clone();
        t.bound = bound;
        t
    }

    /// Keeps the morphisms selected by `keep` and every table entry among
    /// them.
    pub fn restrict_morphisms(&self, keep: impl Fn(Mor) -> bool, bound: usize) -> Tables {
        let keep: Vec<Mor> = (0..self.morphisms.len()).filter(|&m| keep(m)).collect();
        let mut remap = vec![usize::MAX; self.morphisms.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let kept = |m: Mor| remap.get(m).copied().filter(|&x| x != usize::MAX);
        let morphisms = keep.iter().map(|&m| self.morphisms[m].clone()).collect();
        let identities = self
            .identities
            .iter()
            .map(|&m| kept(m).unwrap_or(usize::MAX))
            .collect();
        let action = self
            .action
            .iter()
            .filter_map(|((f, p), g)| Some(((kept(*f)?, p.clone()), kept(*g)?)))
            .collect();
        let comp = self
            .comp
            .iter()
            .filter_map(|((g, fs), h)| {
                let fs: Option<Vec<Mor>> = fs.iter().map(|&f| kept(f)).collect();
                Some(((kept(*g)?, fs?), kept(*h)?))
            })
            .collect();
        Tables::from_parts(
            self.name.clone(),
            bound,
            self.objects.clone(),
            morphisms,
            identities,
            action,
            comp,
        )
    }
}

/// All signatures over `n` objects with arity at most `bound`.
pub fn all_signatures(n: usize, bound: usize) -> Vec<Signature> {
    fn rec(n: usize, k: usize, cur: &mut Vec<Obj>, out: &mut Vec<Signature>) {
        if cur.len() == k {
            for b in 0..n {
                out.push(Signature::new(cur.clone(), b));
            }
            return;
        }
        for a in 0..n {
            cur.push(a);
            rec(n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=bound {
        rec(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Incremental construction by name; [`TablesBuilder::build`] sorts objects
/// and morphisms by token and fills in the unit-law entries of `comp`.
#[derive(Clone, Debug, Default)]
pub struct TablesBuilder {
    name: String,
    bound: usize,
    objects: Vec<String>,
    morphisms: Vec<MorphismDecl>,
    identities: Vec<Option<Mor>>,
    action: Vec<(Mor, Perm, Mor)>,
    comp: Vec<(Mor, Vec<Mor>, Mor)>,
}

/// Output of [`TablesBuilder::build`]: the tables plus the index remapping
/// from builder indices to final (sorted) indices.
#[derive(Clone, Debug)]
pub struct Built {
    pub tables: Tables,
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

impl TablesBuilder {
    pub fn new(name: impl Into<String>, bound: usize) -> Self {
        TablesBuilder {
            name: name.into(),
            bound,
            ..Default::default()
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn sig(&self, m: Mor) -> &Signature {
        &self.morphisms[m].sig
    }

    /// Adds an object together with its identity `id_<name>`.
    pub fn object(&mut self, name: impl Into<String>) -> Obj {
        let name = name.into();
        let o = self.objects.len();
        self.objects.push(name.clone());
        self.identities.push(None);
        let id = self.morphism(format!("id_{name}"), vec![o], o);
        self.identities[o] = Some(id);
        o
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o].expect("identity")
    }

    pub fn morphism(&mut self, name: impl Into<String>, inputs: Vec<Obj>, output: Obj) -> Mor {
        self.morphisms.push(MorphismDecl {
            name: name.into(),
            sig: Signature::new(inputs, output),
        });
        self.morphisms.len() - 1
    }

    pub fn set_comp(&mut self, g: Mor, fs: Vec<Mor>, h: Mor) {
        self.comp.push((g, fs, h));
    }

    pub fn set_action(&mut self, f: Mor, sigma: Perm, g: Mor) {
        if !sigma.is_identity() {
            self.action.push((f, sigma, g));
        }
    }

    pub fn build(self) -> Built {
        let mut obj_order: Vec<Obj> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_map = vec![0; self.objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_map[old] = new;
        }
        let mut mor_order: Vec<Mor> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].name.cmp(&self.morphisms[b].name));
        let mut mor_map = vec![0; self.morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_map[old] = new;
        }
        let objects = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms: Vec<MorphismDecl> = mor_order
            .iter()
            .map(|&m| {
                let d = &self.morphisms[m];
                MorphismDecl {
                    name: d.name.clone(),
                    sig: d.sig.map_objects(|o| obj_map[o]),
                }
            })
            .collect();
        let identities: Vec<Mor> = obj_order
            .iter()
            .map(|&o| self.identities[o].map(|m| mor_map[m]).unwrap_or(usize::MAX))
            .collect();
        let action = self
            .action
            .iter()
            .map(|(f, p, g)| ((mor_map[*f], p.clone()), mor_map[*g]))
            .collect();
        let mut comp: BTreeMap<(Mor, Vec<Mor>), Mor> = self
            .comp
            .iter()
            .map(|(g, fs, h)| {
                (
                    (mor_map[*g], fs.iter().map(|&f| mor_map[f]).collect()),
                    mor_map[*h],
                )
            })
            .collect();
        // unit-law entries
        for (m, d) in morphisms.iter().enumerate() {
            if let Some(&id) = identities.get(d.sig.output) {
                if id != usize::MAX {
                    comp.entry((id, vec![m])).or_insert(m);
                }
            }
            if d.sig.arity() <= self.bound {
                let ids: Option<Vec<Mor>> = d
                    .sig
                    .inputs
                    .iter()
                    .map(|&a| identities.get(a).copied().filter(|&i| i != usize::MAX))
                    .collect();
                if let Some(ids) = ids {
                    comp.entry((m, ids)).or_insert(m);
                }
            }
        }
        let tables = Tables::from_parts(
            self.name, self.bound, objects, morphisms, identities, action, comp,
        );
        Built {
            tables,
            objects: obj_map,
            morphisms: mor_map,
        }
    }
}
