//! Finite categories, multigraphs and truncated symmetric multicategories.

use std::fmt;

use crate::perm::Perm;
use crate::tables::{Mor, MorphismDecl, Obj, Signature, Tables};

/// Anything backed by composition tables.
pub trait Structure: Clone + fmt::Debug {
    fn tables(&self) -> &Tables;
    fn from_tables(t: Tables) -> Self;
}

/// A finite category: a bound-1 table with unary morphisms only.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCategory(Tables);

/// A symmetric multicategory truncated at arity `bound`: composites of
/// arity greater than the bound are undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct Multicat(Tables);

impl Structure for FiniteCategory {
    fn tables(&self) -> &Tables {
        &self.0
    }
    fn from_tables(t: Tables) -> Self {
        FiniteCategory(t)
    }
}

impl Structure for Multicat {
    fn tables(&self) -> &Tables {
        &self.0
    }
    fn from_tables(t: Tables) -> Self {
        Multicat(t)
    }
}

impl std::ops::Deref for FiniteCategory {
    type Target = Tables;
    fn deref(&self) -> &Tables {
        &self.0
    }
}

impl std::ops::Deref for Multicat {
    type Target = Tables;
    fn deref(&self) -> &Tables {
        &self.0
    }
}

impl FiniteCategory {
    pub fn into_tables(self) -> Tables {
        self.0
    }

    pub fn tables_mut(&mut self) -> &mut Tables {
        &mut self.0
    }

    /// Source of a morphism.
    pub fn src(&self, m: Mor) -> Obj {
        self.0.sig(m).inputs[0]
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.0.sig(m).output
    }

    /// `g ∘ f`, panicking if the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.0.comp(g, &[f]).unwrap_or_else(|| {
            panic!(
                "{} ∘ {} undefined",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    pub fn homs(&self, a: Obj, b: Obj) -> &[Mor] {
        self.0.hom_unary(a, b)
    }

    /// Non-identity idempotents plus identities, as `(object, e)` pairs in
    /// index order.
    pub fn idempotents(&self) -> Vec<(Obj, Mor)> {
        let mut out = Vec::new();
        for x in 0..self.object_count() {
            for &e in self.homs(x, x) {
                if self.0.comp(e, &[e]) == Some(e) {
                    out.push((x, e));
                }
            }
        }
        out
    }

    /// `true` if `f` has a two-sided inverse.
    pub fn inverse_of(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.homs(b, a).iter().copied().find(|&g| {
            self.0.comp(g, &[f]) == Some(self.identity(a))
                && self.0.comp(f, &[g]) == Some(self.identity(b))
        })
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse_of(f).is_some()
    }

    pub fn total_morphisms(&self) -> usize {
        self.morphism_count()
    }
}

impl Multicat {
    pub fn into_tables(self) -> Tables {
        self.0
    }

    pub fn tables_mut(&mut self) -> &mut Tables {
        &mut self.0
    }

    /// Forgets all data of arity greater than `k`.
    pub fn truncate(&self, k: usize) -> Multicat {
        Multicat(self.0.truncate(k))
    }
}

/// A multigraph: objects and signature-indexed homs, no composition. When
/// symmetric it also carries Σ_k action tables.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiGraph {
    pub name: String,
    pub bound: usize,
    pub symmetric: bool,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
    pub action: std::collections::BTreeMap<(Mor, Perm), Mor>,
}

impl MultiGraph {
    pub fn new(name: impl Into<String>, bound: usize, objects: Vec<String>) -> Self {
        MultiGraph {
            name: name.into(),
            bound,
            symmetric: false,
            objects,
            morphisms: Vec::new(),
            action: Default::default(),
        }
    }

    pub fn hom(&self, sig: &Signature) -> Vec<Mor> {
        (0..self.morphisms.len())
            .filter(|&m| &self.morphisms[m].sig == sig)
            .collect()
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn act(&self, sigma: &Perm, f: Mor) -> Option<Mor> {
        if sigma.is_identity() {
            Some(f)
        } else {
            self.action.get(&(f, sigma.clone())).copied()
        }
    }

    /// `true` if no output object of a morphism occurs among the inputs of
    /// any morphism, so the free multicategory has no non-identity
    /// composites.
    pub fn is_composite_free(&self) -> bool {
        let outputs: std::collections::BTreeSet<Obj> =
            self.morphisms.iter().map(|d| d.sig.output).collect();
        !self
            .morphisms
            .iter()
            .any(|d| d.sig.inputs.iter().any(|i| outputs.contains(i)))
    }

    /// Sorts objects and morphisms by token, remapping tables.
    pub fn canonicalize(&mut self) {
        let mut obj_order: Vec<Obj> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut om = vec![0; obj_order.len()];
        for (n, &o) in obj_order.iter().enumerate() {
            om[o] = n;
        }
        let mut mor_order: Vec<Mor> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].name.cmp(&self.morphisms[b].name));
        let mut mm = vec![0; mor_order.len()];
        for (n, &m) in mor_order.iter().enumerate() {
            mm[m] = n;
        }
        self.objects = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        self.morphisms = mor_order
            .iter()
            .map(|&m| MorphismDecl {
                name: self.morphisms[m].name.clone(),
                sig: self.morphisms[m].sig.map_objects(|o| om[o]),
            })
            .collect();
        self.action = self
            .action
            .iter()
            .map(|((f, p), g)| ((mm[*f], p.clone()), mm[*g]))
            .collect();
    }
}

/// A plain directed graph (the data of a category without composition).
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub edges: Vec<(String, Obj, Obj)>,
}
