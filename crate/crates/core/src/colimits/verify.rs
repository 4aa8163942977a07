//! Checks the universal property of a candidate pushout against a finite
//! list of test targets by brute-force enumeration of cocones.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::PushoutResult;
use crate::error::Result;
use crate::map::Map;
use crate::search::{enumerate_maps, MapSearch};
use crate::structure::Structure;
use crate::tables::{Mor, Obj};

/// `C ←f A →i B`.
#[derive(Clone, Debug)]
pub struct Span<S: Structure> {
    pub f: Map<S>,
    pub i: Map<S>,
}

/// Outcome of [`verify_pushout`].
#[derive(Clone, Debug, Default)]
pub struct PushoutCheck {
    pub commutes: bool,
    pub legs_valid: bool,
    pub targets: usize,
    pub cocones: usize,
    /// Cocones with no mediating map, as `target: (b, c)` descriptions.
    pub missing: Vec<String>,
    /// Cocones with more than one mediating map.
    pub ambiguous: Vec<String>,
}

impl PushoutCheck {
    pub fn ok(&self) -> bool {
        self.commutes && self.legs_valid && self.missing.is_empty() && self.ambiguous.is_empty()
    }
}

impl fmt::Display for PushoutCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "commutes: {}, legs valid: {}, {} cocones over {} targets",
            self.commutes, self.legs_valid, self.cocones, self.targets
        )?;
        for m in &self.missing {
            writeln!(f, "  no mediator: {m}")?;
        }
        for m in &self.ambiguous {
            writeln!(f, "  several mediators: {m}")?;
        }
        Ok(())
    }
}

type Key = (Vec<Obj>, Vec<Mor>, Vec<Obj>, Vec<Mor>);

fn describe<S: Structure>(name: &str, b: &Map<S>, c: &Map<S>) -> String {
    let t = b.tgt();
    let objs = |m: &Map<S>| {
        m.objects
            .iter()
            .map(|&o| t.object_name(o))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mors = |m: &Map<S>| {
        m.morphisms
            .iter()
            .map(|&x| t.morphism_name(x))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{name}: b=[{}|{}] c=[{}|{}]",
        objs(b),
        mors(b),
        objs(c),
        mors(c)
    )
}

/// For every target `T`, every cocone `(b : B → T, c : C → T)` with
/// `b ∘ i = c ∘ f` must factor through the candidate by exactly one map.
pub fn verify_pushout<S: Structure>(
    span: &Span<S>,
    candidate: &PushoutResult<S>,
    targets: &[Arc<S>],
    budget: u64,
) -> Result<PushoutCheck> {
    let mut check = PushoutCheck {
        commutes: candidate.commutes(&span.f, &span.i),
        legs_valid: candidate.leg_b.is_valid() && candidate.leg_c.is_valid(),
        targets: targets.len(),
        ..Default::default()
    };
    let (f, i) = (&span.f, &span.i);
    for t in targets {
        let mut mediators: HashMap<Key, usize> = HashMap::new();
        for u in enumerate_maps(&candidate.object, t, budget)? {
            let b = candidate.leg_b.then(&u);
            let c = candidate.leg_c.then(&u);
            *mediators
                .entry((b.objects, b.morphisms, c.objects, c.morphisms))
                .or_default() += 1;
        }
        for c in enumerate_maps(&f.target, t, budget)? {
            let fc = f.then(&c);
            let mut search = MapSearch::new(i.tgt(), t.tables()).budget(budget);
            for (x, &y) in i.objects.iter().enumerate() {
                search.restrict_object(y, &[fc.objects[x]]);
            }
            for (m, &y) in i.morphisms.iter().enumerate() {
                search.restrict_morphism(y, &[fc.morphisms[m]]);
            }
            for sol in search.run()? {
                check.cocones += 1;
                let b = Map::new(i.target.clone(), t.clone(), sol.objects, sol.morphisms);
                let key = (
                    b.objects.clone(),
                    b.morphisms.clone(),
                    c.objects.clone(),
                    c.morphisms.clone(),
                );
                match mediators.get(&key).copied().unwrap_or(0) {
                    1 => {}
                    0 => check.missing.push(describe(t.tables().name(), &b, &c)),
                    _ => check.ambiguous.push(describe(t.tables().name(), &b, &c)),
                }
            }
        }
    }
    Ok(check)
}
