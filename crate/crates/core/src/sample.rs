//! Seeded generation of small valid instances.
//!
//! Categories and multicategories are sampled as concrete models: every
//! object is a finite set with one to three elements and every morphism
//! is a function `X₁ × ... × Xₙ → Y`. A few random generating functions
//! are closed under composition (within the truncation bound) and under
//! permutation of arguments, so the result is valid by construction.
//! Samples whose homs grow past the size limit are rejected.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{restrict_u, underlying_1, ObjectMap};
use crate::map::{Functor, Map, MultiFunctor};
use crate::perm::Perm;
use crate::search::MapSearch;
use crate::standard::com;
use crate::structure::{FiniteCategory, MultiGraph, Multicat, Structure};
use crate::tables::{Mor, MorphismDecl, Obj, Signature, Tables, TablesBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Function {
    sig: Signature,
    /// Values on input tuples in lexicographic order, first input most
    /// significant.
    table: Vec<u8>,
}

struct Model<'a> {
    sizes: &'a [usize],
}

impl Model<'_> {
    fn tuples(&self, inputs: &[Obj]) -> usize {
        inputs.iter().map(|&o| self.sizes[o]).product()
    }

    /// Decodes tuple index `t` into the argument values.
    fn args(&self, inputs: &[Obj], mut t: usize) -> Vec<usize> {
        let mut out = vec![0; inputs.len()];
        for (p, &o) in inputs.iter().enumerate().rev() {
            out[p] = t % self.sizes[o];
            t /= self.sizes[o];
        }
        out
    }

    fn encode(&self, inputs: &[Obj], args: &[usize]) -> usize {
        inputs
            .iter()
            .zip(args)
            .fold(0, |acc, (&o, &v)| acc * self.sizes[o] + v)
    }

    fn identity(&self, o: Obj) -> Function {
        Function {
            sig: Signature::unary(o, o),
            table: (0..self.sizes[o] as u8).collect(),
        }
    }

    fn compose(&self, g: &Function, fs: &[&Function]) -> Function {
        let mut inputs = Vec::new();
        for f in fs {
            inputs.extend_from_slice(&f.sig.inputs);
        }
        let table = (0..self.tuples(&inputs))
            .map(|t| {
                let args = self.args(&inputs, t);
                let mut at = 0;
                let mut inner = Vec::with_capacity(fs.len());
                for f in fs {
                    let n = f.sig.arity();
                    let slice = &args[at..at + n];
                    at += n;
                    inner.push(f.table[self.encode(&f.sig.inputs, slice)] as usize);
                }
                g.table[self.encode(&g.sig.inputs, &inner)]
            })
            .collect();
        Function {
            sig: Signature::new(inputs, g.sig.output),
            table,
        }
    }

    /// `σ·f`: input `i` moves to position `σ(i)`.
    fn act(&self, sigma: &Perm, f: &Function) -> Function {
        let sig = f.sig.permuted(sigma);
        let table = (0..self.tuples(&sig.inputs))
            .map(|t| {
                let y = self.args(&sig.inputs, t);
                let x: Vec<usize> = (0..sigma.arity()).map(|i| y[sigma.apply(i)]).collect();
                f.table[self.encode(&f.sig.inputs, &x)]
            })
            .collect();
        Function { sig, table }
    }
}

/// A family of functions between small finite sets, closed under
/// composition and permutation of arguments up to its arity bound.
///
/// Full sub-models on any set of objects are again closed, and they share
/// object and morphism names, so inclusions between them can be matched by
/// name.
#[derive(Clone, Debug)]
pub struct ConcreteModel {
    sizes: Vec<usize>,
    bound: usize,
    /// Identities first, in object order; then sorted.
    elems: Vec<Function>,
}

impl ConcreteModel {
    pub fn object_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The full sub-model on `objects`, truncated at `bound`.
    pub fn render(&self, name: impl Into<String>, objects: &[Obj], bound: usize) -> Tables {
        self.render_arities(name, objects, 0, bound)
    }

    fn render_arities(
        &self,
        name: impl Into<String>,
        objects: &[Obj],
        min: usize,
        bound: usize,
    ) -> Tables {
        let n = self.sizes.len();
        let model = Model { sizes: &self.sizes };
        let keep: Vec<usize> = (0..self.elems.len())
            .filter(|&e| {
                let s = &self.elems[e].sig;
                (min..=bound).contains(&s.arity())
                    && objects.contains(&s.output)
                    && s.inputs.iter().all(|o| objects.contains(o))
            })
            .collect();
        let elems: Vec<&Function> = keep.iter().map(|&e| &self.elems[e]).collect();
        let mut b = TablesBuilder::new(name, bound);
        let mut obj = vec![usize::MAX; n];
        for &o in objects {
            obj[o] = b.object(OBJECT_NAMES[o]);
        }
        let index: Vec<Mor> = keep
            .iter()
            .map(|&e| {
                let s = &self.elems[e].sig;
                if e < n {
                    b.identity(obj[e])
                } else {
                    b.morphism(
                        format!("m{}", e - n),
                        s.inputs.iter().map(|&o| obj[o]).collect(),
                        obj[s.output],
                    )
                }
            })
            .collect();
        let lookup: HashMap<&Function, usize> =
            elems.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let owned: Vec<Function> = elems.iter().map(|f| (*f).clone()).collect();
        let mut by_output: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, f) in owned.iter().enumerate() {
            by_output[f.sig.output].push(i);
        }
        for (gi, g) in owned.iter().enumerate() {
            for sigma in Perm::non_identity(g.sig.arity()) {
                b.set_action(
                    index[gi],
                    sigma.clone(),
                    index[lookup[&model.act(&sigma, g)]],
                );
            }
            for tuple in tuples(&owned, &by_output, &g.sig.inputs, bound) {
                let fs: Vec<&Function> = tuple.iter().map(|&i| &owned[i]).collect();
                let h = lookup[&model.compose(g, &fs)];
                b.set_comp(
                    index[gi],
                    tuple.iter().map(|&i| index[i]).collect(),
                    index[h],
                );
            }
        }
        b.build().tables
    }

    /// The unary part on `objects`.
    pub fn category(&self, name: impl Into<String>, objects: &[Obj]) -> FiniteCategory {
        FiniteCategory::from_tables(self.render_arities(name, objects, 1, 1))
    }

    pub fn multicat(&self, name: impl Into<String>, objects: &[Obj]) -> Multicat {
        Multicat::from_tables(self.render(name, objects, self.bound))
    }
}

/// The map sending every object and morphism of `source` to the one of the
/// same name in `target`.
pub fn inclusion_by_name<S: Structure>(source: &Arc<S>, target: &Arc<S>) -> Map<S> {
    let (s, t) = (source.tables(), target.tables());
    let objects = s
        .objects()
        .iter()
        .map(|o| t.object_index(o).expect("object present"))
        .collect();
    let morphisms = s
        .morphisms()
        .iter()
        .map(|d| t.morphism_index(&d.name).expect("morphism present"))
        .collect();
    Map::new(source.clone(), target.clone(), objects, morphisms)
}

/// Size limits for sampled instances.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_objects: usize,
    pub max_carrier: usize,
    pub max_generators: usize,
    pub max_hom: usize,
    pub max_total: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 3,
            max_carrier: 2,
            max_generators: 4,
            max_hom: 4,
            max_total: 40,
        }
    }
}

/// Deterministic sampler; equal seeds give equal streams.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub limits: Limits,
    count: usize,
}

const OBJECT_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            limits: Limits::default(),
            count: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A fresh structure name with the given prefix.
    pub fn next_name(&mut self, prefix: &str) -> String {
        self.count += 1;
        format!("{prefix}{}", self.count)
    }

    /// Closure of `gens` plus identities, or `None` past the limits.
    fn close(&self, model: &Model, bound: usize, gens: Vec<Function>) -> Option<Vec<Function>> {
        let n = model.sizes.len();
        let mut elems: Vec<Function> = (0..n).map(|o| model.identity(o)).collect();
        let mut seen: HashMap<Function, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut hom_sizes: HashMap<Signature, usize> = HashMap::new();
        for f in &elems {
            *hom_sizes.entry(f.sig.clone()).or_default() += 1;
        }
        let mut push = |f: Function,
                        elems: &mut Vec<Function>,
                        seen: &mut HashMap<Function, usize>|
         -> Option<bool> {
            if seen.contains_key(&f) {
                return Some(false);
            }
            let h = hom_sizes.entry(f.sig.clone()).or_default();
            *h += 1;
            if *h > self.limits.max_hom || elems.len() >= self.limits.max_total {
                return None;
            }
            seen.insert(f.clone(), elems.len());
            elems.push(f);
            Some(true)
        };
        for g in gens {
            push(g, &mut elems, &mut seen)?;
        }
        loop {
            let mut grew = false;
            let snapshot = elems.clone();
            for f in &snapshot {
                for sigma in Perm::non_identity(f.sig.arity()) {
                    grew |= push(model.act(&sigma, f), &mut elems, &mut seen)?;
                }
            }
            let mut by_output: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (i, f) in snapshot.iter().enumerate() {
                by_output[f.sig.output].push(i);
            }
            for g in &snapshot {
                for tuple in tuples(&snapshot, &by_output, &g.sig.inputs, bound) {
                    let fs: Vec<&Function> = tuple.iter().map(|&i| &snapshot[i]).collect();
                    grew |= push(model.compose(g, &fs), &mut elems, &mut seen)?;
                }
            }
            if !grew {
                return Some(elems);
            }
        }
    }

    fn random_function(&mut self, sizes: &[usize], inputs: Vec<Obj>, output: Obj) -> Function {
        let m = Model { sizes };
        let rows = m.tuples(&inputs);
        let table = (0..rows)
            .map(|_| self.rng.gen_range(0..sizes[output]) as u8)
            .collect();
        Function {
            sig: Signature::new(inputs, output),
            table,
        }
    }

    /// A closed model on exactly `n` objects with arities `≤ bound`.
    pub fn model(&mut self, n: usize, bound: usize, unary_only: bool) -> ConcreteModel {
        assert!(bound >= 1, "identities need arity bound at least 1");
        assert!(n <= OBJECT_NAMES.len());
        loop {
            let sizes: Vec<usize> = (0..n)
                .map(|_| self.rng.gen_range(1..=self.limits.max_carrier))
                .collect();
            let gens = self.rng.gen_range(1..=self.limits.max_generators);
            let mut fs = Vec::new();
            for _ in 0..gens {
                let arity = if unary_only {
                    1
                } else {
                    self.rng.gen_range(0..=bound)
                };
                let inputs = (0..arity).map(|_| self.rng.gen_range(0..n)).collect();
                let output = self.rng.gen_range(0..n);
                fs.push(self.random_function(&sizes, inputs, output));
            }
            let model = Model { sizes: &sizes };
            if let Some(mut elems) = self.close(&model, bound, fs) {
                elems[n..].sort_by(|x, y| (&x.sig, &x.table).cmp(&(&y.sig, &y.table)));
                return ConcreteModel {
                    sizes,
                    bound,
                    elems,
                };
            }
        }
    }

    fn object_count(&mut self) -> usize {
        self.rng.gen_range(1..=self.limits.max_objects)
    }

    /// A category with at most `max_objects` objects.
    pub fn category(&mut self) -> FiniteCategory {
        let n = self.object_count();
        let name = self.next_name("C");
        self.model(n, 1, true)
            .category(name, &(0..n).collect::<Vec<_>>())
    }

    /// A truncated symmetric multicategory at bound `k ≥ 1`.
    pub fn multicat(&mut self, k: usize) -> Multicat {
        let n = self.object_count();
        let name = self.next_name("M");
        self.model(n, k, false)
            .multicat(name, &(0..n).collect::<Vec<_>>())
    }

    /// `u*B → B` for a random surjection `u` from at most `max(n, |B|)`
    /// objects onto those of `B`.
    pub fn trivial_fibration<S: Structure>(&mut self, b: &Arc<S>, n: usize) -> Map<S> {
        let nb = b.tables().object_count();
        let size = if nb == 0 { 0 } else { nb.max(n) };
        let mut images: Vec<Obj> = (0..nb)
            .chain((nb..size).map(|_| self.rng.gen_range(0..nb)))
            .collect();
        images.shuffle(&mut self.rng);
        let domain = (0..size).map(|k| format!("x{k}")).collect();
        let r = restrict_u(&ObjectMap::new(domain, images.clone()), b.tables());
        Map::new(
            Arc::new(S::from_tables(r.tables)),
            b.clone(),
            images,
            r.morphisms,
        )
    }

    /// Splits `0..n` into a nonempty shared part and two sides, the first
    /// side nonempty.
    fn three_way(&mut self, n: usize) -> (Vec<Obj>, Vec<Obj>, Vec<Obj>) {
        let mut objs: Vec<Obj> = (0..n).collect();
        objs.shuffle(&mut self.rng);
        let shared = self.rng.gen_range(1..n);
        let first = self.rng.gen_range(1..=n - shared);
        let mut a = objs[..shared].to_vec();
        let mut b = objs[shared..shared + first].to_vec();
        let mut c = objs[shared + first..].to_vec();
        a.sort();
        b.sort();
        c.sort();
        (a, b, c)
    }

    /// A span `C ←f A →i B` of full inclusions of sub-models of one
    /// category, with `B` adding at least one object.
    pub fn full_span(&mut self) -> (Functor, Functor) {
        let n = self.rng.gen_range(2..=self.limits.max_objects.max(2));
        let model = self.model(n, 1, true);
        let (shared, side_b, side_c) = self.three_way(n);
        let with = |x: &[Obj]| {
            let mut v = [shared.as_slice(), x].concat();
            v.sort();
            v
        };
        let a = Arc::new(model.category(self.next_name("A"), &shared));
        let b = Arc::new(model.category(self.next_name("B"), &with(&side_b)));
        let c = Arc::new(model.category(self.next_name("C"), &with(&side_c)));
        (inclusion_by_name(&a, &c), inclusion_by_name(&a, &b))
    }

    /// `M` and a full inclusion `i : M₁ → B` adding at least one object.
    pub fn extension(&mut self, k: usize) -> (Arc<Multicat>, Functor) {
        let n = self.rng.gen_range(2..=self.limits.max_objects.max(2));
        let model = self.model(n, k, false);
        let (shared, _, _) = self.three_way(n);
        let m = Arc::new(model.multicat(self.next_name("M"), &shared));
        let m1 = Arc::new(underlying_1(&m));
        let b = Arc::new(model.category(self.next_name("B"), &(0..n).collect::<Vec<_>>()));
        (m, inclusion_by_name(&m1, &b))
    }

    /// Maps for the premises harness, cycling through trivial fibrations,
    /// sub-model inclusions, arbitrary maps and maps to `Com_K`; plus
    /// `pushouts` anchors `E(1) → M`.
    pub fn premise_sample(
        &mut self,
        k: usize,
        maps: usize,
        pushouts: usize,
    ) -> (Vec<MultiFunctor>, Vec<MultiFunctor>) {
        let terminal = Arc::new(com(k));
        let mut out = Vec::with_capacity(maps);
        let mut n = 0;
        while out.len() < maps {
            n += 1;
            match n % 4 {
                0 => {
                    let b = Arc::new(self.multicat(k));
                    out.push(self.trivial_fibration(&b, 3));
                }
                1 => {
                    let size = self.rng.gen_range(2..=self.limits.max_objects.max(2));
                    let model = self.model(size, k, false);
                    let (part, _, _) = self.three_way(size);
                    let all: Vec<Obj> = (0..size).collect();
                    let small = Arc::new(model.multicat(self.next_name("P"), &part));
                    let whole = Arc::new(model.multicat(self.next_name("W"), &all));
                    out.push(inclusion_by_name(&small, &whole));
                }
                2 => {
                    let a = Arc::new(self.multicat(k));
                    let b = Arc::new(self.multicat(k));
                    out.extend(self.map(&a, &b, 8, crate::DEFAULT_BUDGET));
                }
                _ => {
                    let a = Arc::new(self.multicat(k));
                    out.extend(self.map(&a, &terminal, 1, crate::DEFAULT_BUDGET));
                }
            }
        }
        let mut anchors = Vec::with_capacity(pushouts);
        while anchors.len() < pushouts {
            let m = Arc::new(self.multicat(k));
            anchors.extend(crate::modelcheck::anchors(&m));
        }
        anchors.truncate(pushouts);
        (out, anchors)
    }

    /// A nonsymmetric multigraph with at most three arrows of arity `≤ k`.
    pub fn multigraph(&mut self, k: usize) -> MultiGraph {
        let n = self.rng.gen_range(1..=self.limits.max_objects);
        let objects = OBJECT_NAMES[..n].iter().map(|s| s.to_string()).collect();
        let name = self.next_name("G");
        let mut g = MultiGraph::new(name, k, objects);
        for i in 0..self.rng.gen_range(0..=3) {
            let arity = self.rng.gen_range(0..=k);
            let inputs = (0..arity).map(|_| self.rng.gen_range(0..n)).collect();
            let output = self.rng.gen_range(0..n);
            g.morphisms.push(MorphismDecl {
                name: format!("g{i}"),
                sig: Signature::new(inputs, output),
            });
        }
        g.canonicalize();
        g
    }

    /// A uniformly chosen map among the first `cap` found, if any exist.
    pub fn map<S: Structure>(
        &mut self,
        source: &Arc<S>,
        target: &Arc<S>,
        cap: usize,
        budget: u64,
    ) -> Option<Map<S>> {
        let sols = MapSearch::new(source.tables(), target.tables())
            .budget(budget)
            .limit(cap)
            .run()
            .ok()?;
        let s = sols.choose(&mut self.rng)?;
        Some(Map::new(
            source.clone(),
            target.clone(),
            s.objects.clone(),
            s.morphisms.clone(),
        ))
    }
}

/// Tuples `(f₁, ..., fₙ)` with `fⱼ` ending at `inputs[j]` and total arity at
/// most `bound`.
fn tuples(
    elems: &[Function],
    by_output: &[Vec<usize>],
    inputs: &[Obj],
    bound: usize,
) -> Vec<Vec<usize>> {
    let mut acc: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    for &x in inputs {
        let mut next = Vec::new();
        for (t, ar) in &acc {
            for &f in &by_output[x] {
                let nar = ar + elems[f].sig.arity();
                if nar <= bound {
                    let mut t = t.clone();
                    t.push(f);
                    next.push((t, nar));
                }
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(t, _)| t).collect()
}

/// A table with exactly one entry changed.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub description: String,
    pub tables: Tables,
}

/// Every single-entry mutation of the composition, action and identity
/// tables: each entry removed, each entry redirected to every other element
/// of its hom, one redirection to an ill-typed element, and each identity
/// replaced by every other endomorphism.
pub fn single_entry_mutants(t: &Tables) -> Vec<Mutant> {
    let mut out = Vec::new();
    let other_sig = |sig: &Signature| (0..t.morphism_count()).find(|&m| t.sig(m) != sig);
    for ((g, fs), &h) in t.comp_table() {
        let key = (*g, fs.clone());
        let label = |x: &str| {
            let fs: Vec<&str> = fs.iter().map(|&f| t.morphism_name(f)).collect();
            format!("comp {} ({}) {x}", t.morphism_name(*g), fs.join(" "))
        };
        let mut m = t.clone();
        m.comp_mut().remove(&key);
        out.push(Mutant {
            description: label("removed"),
            tables: m,
        });
        let sig = t.sig(h).clone();
        let mut targets: Vec<Mor> = t.hom(&sig).iter().copied().filter(|&x| x != h).collect();
        targets.extend(other_sig(&sig));
        for x in targets {
            let mut m = t.clone();
            m.comp_mut().insert(key.clone(), x);
            out.push(Mutant {
                description: label(&format!("= {}", t.morphism_name(x))),
                tables: m,
            });
        }
    }
    for ((f, sigma), &g) in t.action_table() {
        let key = (*f, sigma.clone());
        let label = |x: &str| format!("act {} {:?} {x}", t.morphism_name(*f), sigma.images());
        let mut m = t.clone();
        m.action_mut().remove(&key);
        out.push(Mutant {
            description: label("removed"),
            tables: m,
        });
        let sig = t.sig(g).clone();
        let mut targets: Vec<Mor> = t.hom(&sig).iter().copied().filter(|&x| x != g).collect();
        targets.extend(other_sig(&sig));
        for x in targets {
            let mut m = t.clone();
            m.action_mut().insert(key.clone(), x);
            out.push(Mutant {
                description: label(&format!("= {}", t.morphism_name(x))),
                tables: m,
            });
        }
    }
    for o in 0..t.object_count() {
        let id = t.identity(o);
        for &x in t.hom_unary(o, o) {
            if x != id {
                let mut m = t.clone();
                m.identities_mut()[o] = x;
                out.push(Mutant {
                    description: format!(
                        "identity of {} = {}",
                        t.object_name(o),
                        t.morphism_name(x)
                    ),
                    tables: m,
                });
            }
        }
    }
    out
}
