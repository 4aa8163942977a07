//! Coends, pushouts of categories along full inclusions, pushouts of
//! multicategories along E, a bounded oracle, and a universal-property
//! checker.

mod cat;
mod coend;
mod multi;
mod oracle;
mod verify;

use std::fmt;
use std::sync::Arc;

use crate::map::Map;
use crate::structure::Structure;

pub use cat::pushout_cat_ff;
pub use coend::{coend_set, Coend, Profunctor, TableProfunctor};
pub use multi::{pushout_multicat_along_e, pushout_multicat_along_e_iter};
pub use oracle::{bounded_pushout_oracle, OracleLimits};
pub use verify::{verify_pushout, PushoutCheck, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::Oracle => "oracle",
        })
    }
}

/// The pushout of `C ←f A →i B`, with legs `leg_b : B → D` and
/// `leg_c : C → D`.
#[derive(Clone, Debug)]
pub struct PushoutResult<S: Structure> {
    pub object: Arc<S>,
    pub leg_b: Map<S>,
    pub leg_c: Map<S>,
    pub provenance: Provenance,
    pub exact: bool,
}

impl<S: Structure> PushoutResult<S> {
    /// `leg_c ∘ f = leg_b ∘ i` on every object and morphism.
    pub fn commutes(&self, f: &Map<S>, i: &Map<S>) -> bool {
        let a = f.then(&self.leg_c);
        let b = i.then(&self.leg_b);
        a.objects == b.objects && a.morphisms == b.morphisms
    }
}

/// Appends `'` until `name` is not in `taken`, then records it.
pub(crate) fn fresh_name(name: String, taken: &mut std::collections::BTreeSet<String>) -> String {
    let mut n = name;
    while taken.contains(&n) {
        n.push('\'');
    }
    taken.insert(n.clone());
    n
}
