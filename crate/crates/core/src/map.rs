//! Functors and multifunctors between table-backed structures.

use std::fmt;
use std::sync::Arc;

use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::{all_signatures, Mor, Obj, Signature, Tables};

/// A structure-preserving map given by object and morphism tables.
#[derive(Clone)]
pub struct Map<S: Structure> {
    pub source: Arc<S>,
    pub target: Arc<S>,
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

pub type Functor = Map<FiniteCategory>;
pub type MultiFunctor = Map<Multicat>;

impl<S: Structure> fmt::Debug for Map<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.source.tables();
        let t = self.target.tables();
        write!(f, "Map({} -> {}; ", s.name(), t.name())?;
        for (o, &p) in self.objects.iter().enumerate() {
            write!(f, "{}↦{} ", s.object_name(o), t.object_name(p))?;
        }
        for (m, &n) in self.morphisms.iter().enumerate() {
            if !s.is_identity(m) {
                write!(f, "{}↦{} ", s.morphism_name(m), t.morphism_name(n))?;
            }
        }
        write!(f, ")")
    }
}

impl<S: Structure> PartialEq for Map<S> {
    /// Table identity: same tables on both ends and the same assignments.
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.source.tables() == other.source.tables()
            && self.target.tables() == other.target.tables()
    }
}

impl<S: Structure> Map<S> {
    pub fn new(source: Arc<S>, target: Arc<S>, objects: Vec<Obj>, morphisms: Vec<Mor>) -> Self {
        Map {
            source,
            target,
            objects,
            morphisms,
        }
    }

    pub fn identity(s: Arc<S>) -> Self {
        let t = s.tables();
        let objects = (0..t.object_count()).collect();
        let morphisms = (0..t.morphism_count()).collect();
        Map {
            source: s.clone(),
            target: s,
            objects,
            morphisms,
        }
    }

    pub fn src(&self) -> &Tables {
        self.source.tables()
    }

    pub fn tgt(&self) -> &Tables {
        self.target.tables()
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.objects[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.morphisms[m]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Map<S>) -> Map<S> {
        Map {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&m| next.morphisms[m]).collect(),
        }
    }

    pub fn map_signature(&self, sig: &Signature) -> Signature {
        sig.map_objects(|o| self.objects[o])
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.tgt().object_count()];
        self.objects
            .iter()
            .all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.tgt().object_count()];
        for &o in &self.objects {
            seen[o] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.tgt().morphism_count()];
        let inj = self
            .morphisms
            .iter()
            .all(|&m| !std::mem::replace(&mut seen[m], true));
        inj && seen.into_iter().all(|b| b)
            && self.is_injective_on_objects()
            && self.is_surjective_on_objects()
    }

    /// Everything wrong with the map, empty when it is a valid map.
    pub fn problems(&self) -> Vec<String> {
        let s = self.src();
        let t = self.tgt();
        let mut out = Vec::new();
        if self.objects.len() != s.object_count() || self.morphisms.len() != s.morphism_count() {
            out.push("table sizes do not match the source".to_string());
            return out;
        }
        if self.objects.iter().any(|&o| o >= t.object_count())
            || self.morphisms.iter().any(|&m| m >= t.morphism_count())
        {
            out.push("dangling target id".to_string());
            return out;
        }
        for m in 0..s.morphism_count() {
            if t.sig(self.morphisms[m]) != &self.map_signature(s.sig(m)) {
                out.push(format!(
                    "{} sent to {} of the wrong signature",
                    s.morphism_name(m),
                    t.morphism_name(self.morphisms[m])
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..s.object_count() {
            if self.morphisms[s.identity(o)] != t.identity(self.objects[o]) {
                out.push(format!("identity of {} not preserved", s.object_name(o)));
            }
        }
        for ((g, fs), &h) in s.comp_table() {
            let image: Vec<Mor> = fs.iter().map(|&f| self.morphisms[f]).collect();
            match t.comp(self.morphisms[*g], &image) {
                Some(x) if x == self.morphisms[h] => {}
                None if s.arity(h) > t.bound() => {}
                _ => out.push(format!(
                    "composite {}({}) not preserved",
                    s.morphism_name(*g),
                    fs.iter()
                        .map(|&f| s.morphism_name(f))
                        .collect::<Vec<_>>()
                        .join(",")
                )),
            }
        }
        for ((f, sigma), &g) in s.action_table() {
            if t.act(sigma, self.morphisms[*f]) != Some(self.morphisms[g]) {
                out.push(format!(
                    "action {sigma} on {} not preserved",
                    s.morphism_name(*f)
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.problems().is_empty()
    }

    /// Locally bijective on every signature over the source objects up to
    /// the source bound, including signatures with empty source hom.
    pub fn is_full_faithful(&self) -> bool {
        let s = self.src();
        let t = self.tgt();
        for sig in all_signatures(s.object_count(), s.bound().min(t.bound())) {
            let src_hom = s.hom(&sig);
            let tgt_hom = t.hom(&self.map_signature(&sig));
            if src_hom.len() != tgt_hom.len() {
                return false;
            }
            let mut seen = std::collections::BTreeSet::new();
            if !src_hom.iter().all(|&m| seen.insert(self.morphisms[m])) {
                return false;
            }
        }
        true
    }

    /// Images of morphisms in `sig`, as a list parallel to `src().hom(sig)`.
    pub fn local_map(&self, sig: &Signature) -> Vec<Mor> {
        self.src()
            .hom(sig)
            .iter()
            .map(|&m| self.morphisms[m])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::TablesBuilder;

    fn arrow() -> Arc<FiniteCategory> {
        let mut b = TablesBuilder::new("arrow", 1);
        let x = b.object("x");
        let y = b.object("y");
        b.morphism("s", vec![x], y);
        Arc::new(FiniteCategory::from_tables(b.build().tables))
    }

    #[test]
    fn identity_map_is_valid_and_bijective() {
        let c = arrow();
        let id = Functor::identity(c);
        assert!(id.is_valid());
        assert!(id.is_bijective());
        assert_eq!(id.then(&id), id);
    }

    #[test]
    fn wrong_signature_is_reported() {
        let c = arrow();
        let s = c.morphism_index("s").unwrap();
        let mut f = Functor::identity(c.clone());
        f.morphisms[s] = c.identity(0);
        assert!(f.problems().iter().any(|p| p.contains("wrong signature")));
    }
}
