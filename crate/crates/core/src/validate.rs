//! Axiom checking by exhaustive enumeration over table entries.
//!
//! Every violation carries an [`Instance`]: a single axiom instance that can
//! be re-evaluated on its own with [`instance_holds`].

use std::collections::BTreeSet;
use std::fmt;

use crate::error::DEFAULT_BUDGET;
use crate::perm::Perm;
use crate::structure::{FiniteCategory, Multicat};
use crate::tables::{Mor, Obj, Tables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    DanglingId,
    DuplicateName,
    ArityBound,
    Identity,
    SignatureMismatch,
    SpuriousComposite,
    MissingComposite,
    MissingAction,
    UnitLaw,
    Associativity,
    ActionNotGroupAction,
    Equivariance,
    NotUnary,
}

impl ViolationKind {
    pub fn tag(self) -> &'static str {
        match self {
            ViolationKind::DanglingId => "dangling-id",
            ViolationKind::DuplicateName => "duplicate-name",
            ViolationKind::ArityBound => "arity-bound",
            ViolationKind::Identity => "identity",
            ViolationKind::SignatureMismatch => "signature-mismatch",
            ViolationKind::SpuriousComposite => "spurious-composite",
            ViolationKind::MissingComposite => "missing-composite",
            ViolationKind::MissingAction => "missing-action",
            ViolationKind::UnitLaw => "unit-law",
            ViolationKind::Associativity => "associativity",
            ViolationKind::ActionNotGroupAction => "action-not-group-action",
            ViolationKind::Equivariance => "equivariance",
            ViolationKind::NotUnary => "not-unary",
        }
    }

    /// Malformed-table classes, as opposed to failed axioms.
    pub fn is_malformed(self) -> bool {
        matches!(
            self,
            ViolationKind::DanglingId | ViolationKind::DuplicateName
        )
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One axiom instance, identified by the table entries it involves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Instance {
    MorphismIds {
        morphism: usize,
    },
    IdentityEntry {
        object: Obj,
    },
    CompEntryIds {
        g: Mor,
        fs: Vec<Mor>,
    },
    ActionEntryIds {
        f: Mor,
        sigma: Perm,
    },
    DuplicateObject {
        name: String,
    },
    DuplicateMorphism {
        name: String,
    },
    Arity {
        morphism: Mor,
    },
    CompEntry {
        g: Mor,
        fs: Vec<Mor>,
    },
    MissingComp {
        g: Mor,
        fs: Vec<Mor>,
    },
    ActionEntry {
        f: Mor,
        sigma: Perm,
    },
    MissingAction {
        f: Mor,
        sigma: Perm,
    },
    UnitLeft {
        f: Mor,
    },
    UnitRight {
        g: Mor,
    },
    GroupAction {
        f: Mor,
        sigma: Perm,
        tau: Perm,
    },
    Assoc {
        g: Mor,
        fs: Vec<Mor>,
        hs: Vec<Mor>,
    },
    EquivOuter {
        h: Mor,
        fs: Vec<Mor>,
        sigma: Perm,
    },
    EquivInner {
        g: Mor,
        fs: Vec<Mor>,
        taus: Vec<Perm>,
    },
    Unary {
        morphism: Mor,
    },
    CategoryAction {
        f: Mor,
        sigma: Perm,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub instance: Instance,
    /// Human-readable witness tuple (morphism tokens).
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({})", self.kind, self.witness.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `false` when the check budget ran out before all instances were seen.
    pub complete: bool,
    pub checked: u64,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.complete && self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn kinds(&self) -> BTreeSet<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "ok ({} instances checked)", self.checked);
        }
        if !self.complete {
            writeln!(
                f,
                "incomplete: check budget exhausted after {} instances",
                self.checked
            )?;
        }
        for v in &self.violations {
            writeln!(f, "violation {v}")?;
        }
        Ok(())
    }
}

fn mname(t: &Tables, m: Mor) -> String {
    t.morphisms()
        .get(m)
        .map(|d| d.name.clone())
        .unwrap_or_else(|| format!("#{m}"))
}

fn witness(t: &Tables, inst: &Instance) -> Vec<String> {
    let names = |ms: &[Mor]| ms.iter().map(|&m| mname(t, m)).collect::<Vec<_>>();
    match inst {
        Instance::MorphismIds { morphism }
        | Instance::Arity { morphism }
        | Instance::Unary { morphism } => {
            vec![mname(t, *morphism)]
        }
        Instance::IdentityEntry { object } => vec![t
            .objects()
            .get(*object)
            .cloned()
            .unwrap_or_else(|| format!("#{object}"))],
        Instance::DuplicateObject { name } | Instance::DuplicateMorphism { name } => {
            vec![name.clone()]
        }
        Instance::CompEntryIds { g, fs }
        | Instance::CompEntry { g, fs }
        | Instance::MissingComp { g, fs } => {
            let mut v = vec![mname(t, *g)];
            v.extend(names(fs));
            v
        }
        Instance::ActionEntryIds { f, sigma }
        | Instance::ActionEntry { f, sigma }
        | Instance::MissingAction { f, sigma }
        | Instance::CategoryAction { f, sigma } => vec![sigma.to_string(), mname(t, *f)],
        Instance::UnitLeft { f } => vec![mname(t, *f)],
        Instance::UnitRight { g } => vec![mname(t, *g)],
        Instance::GroupAction { f, sigma, tau } => {
            vec![sigma.to_string(), tau.to_string(), mname(t, *f)]
        }
        Instance::Assoc { g, fs, hs } => {
            let mut v = vec![mname(t, *g)];
            v.extend(names(fs));
            v.extend(names(hs));
            v
        }
        Instance::EquivOuter { h, fs, sigma } => {
            let mut v = vec![sigma.to_string(), mname(t, *h)];
            v.extend(names(fs));
            v
        }
        Instance::EquivInner { g, fs, taus } => {
            let mut v = vec![mname(t, *g)];
            v.extend(names(fs));
            v.extend(taus.iter().map(|p| p.to_string()));
            v
        }
    }
}

fn kind_of(inst: &Instance) -> ViolationKind {
    match inst {
        Instance::MorphismIds { .. }
        | Instance::CompEntryIds { .. }
        | Instance::ActionEntryIds { .. } => ViolationKind::DanglingId,
        Instance::IdentityEntry { .. } => ViolationKind::Identity,
        Instance::DuplicateObject { .. } | Instance::DuplicateMorphism { .. } => {
            ViolationKind::DuplicateName
        }
        Instance::Arity { .. } => ViolationKind::ArityBound,
        Instance::CompEntry { .. } | Instance::ActionEntry { .. } => {
            ViolationKind::SignatureMismatch
        }
        Instance::MissingComp { .. } => ViolationKind::MissingComposite,
        Instance::MissingAction { .. } => ViolationKind::MissingAction,
        Instance::UnitLeft { .. } | Instance::UnitRight { .. } => ViolationKind::UnitLaw,
        Instance::GroupAction { .. } => ViolationKind::ActionNotGroupAction,
        Instance::Assoc { .. } => ViolationKind::Associativity,
        Instance::EquivOuter { .. } | Instance::EquivInner { .. } => ViolationKind::Equivariance,
        Instance::Unary { .. } | Instance::CategoryAction { .. } => ViolationKind::NotUnary,
    }
}

/// `None` when the arities do not add up; the signature check reports that.
fn split_by_arity(t: &Tables, fs: &[Mor], hs: &[Mor]) -> Option<Vec<Vec<Mor>>> {
    let mut out = Vec::with_capacity(fs.len());
    let mut pos = 0;
    for &f in fs {
        let k = t.arity(f);
        out.push(hs.get(pos..pos + k)?.to_vec());
        pos += k;
    }
    (pos == hs.len()).then_some(out)
}

fn mor_ok(t: &Tables, m: Mor) -> bool {
    m < t.morphism_count()
}

/// Re-evaluates a single axiom instance; `true` means it holds.
pub fn instance_holds(t: &Tables, inst: &Instance) -> bool {
    let n = t.object_count();
    match inst {
        Instance::MorphismIds { morphism } => t.morphisms().get(*morphism).map_or(false, |d| {
            d.sig.output < n && d.sig.inputs.iter().all(|&i| i < n)
        }),
        Instance::IdentityEntry { object } => match t.identities().get(*object) {
            Some(&id) if mor_ok(t, id) => {
                t.sig(id).inputs == vec![*object] && t.sig(id).output == *object
            }
            _ => false,
        },
        Instance::CompEntryIds { g, fs } => match t.comp_table().get(&(*g, fs.clone())) {
            Some(&h) => mor_ok(t, *g) && mor_ok(t, h) && fs.iter().all(|&f| mor_ok(t, f)),
            None => true,
        },
        Instance::ActionEntryIds { f, sigma } => match t.action_table().get(&(*f, sigma.clone())) {
            Some(&g) => mor_ok(t, *f) && mor_ok(t, g),
            None => true,
        },
        Instance::DuplicateObject { name } => {
            t.objects().iter().filter(|o| *o == name).count() <= 1
        }
        Instance::DuplicateMorphism { name } => {
            t.morphisms().iter().filter(|d| &d.name == name).count() <= 1
        }
        Instance::Arity { morphism } => t.arity(*morphism) <= t.bound(),
        Instance::CompEntry { g, fs } => {
            let Some(&h) = t.comp_table().get(&(*g, fs.clone())) else {
                return true;
            };
            match t.composite_signature(*g, fs) {
                Some(sig) => sig.arity() <= t.bound() && t.sig(h) == &sig,
                None => false,
            }
        }
        Instance::MissingComp { g, fs } => t.comp(*g, fs).is_some(),
        Instance::ActionEntry { f, sigma } => {
            let Some(&g) = t.action_table().get(&(*f, sigma.clone())) else {
                return true;
            };
            !sigma.is_identity()
                && sigma.arity() == t.arity(*f)
                && t.sig(g) == &t.sig(*f).permuted(sigma)
        }
        Instance::MissingAction { f, sigma } => t.act(sigma, *f).is_some(),
        Instance::UnitLeft { f } => {
            let b = t.sig(*f).output;
            t.comp(t.identity(b), &[*f]) == Some(*f)
        }
        Instance::UnitRight { g } => {
            let ids: Vec<Mor> = t.sig(*g).inputs.iter().map(|&a| t.identity(a)).collect();
            t.comp(*g, &ids) == Some(*g)
        }
        Instance::GroupAction { f, sigma, tau } => {
            let lhs = t.act(tau, *f).and_then(|x| t.act(sigma, x));
            let rhs = t.act(&sigma.compose(tau), *f);
            lhs.is_none() || rhs.is_none() || lhs == rhs
        }
        Instance::Assoc { g, fs, hs } => {
            let Some(h) = t.comp(*g, fs) else { return true };
            let Some(lhs) = t.comp(h, hs) else {
                return true;
            };
            let mut inner = Vec::with_capacity(fs.len());
            let Some(parts) = split_by_arity(t, fs, hs) else {
                return true;
            };
            for (f, part) in fs.iter().zip(parts) {
                match t.comp(*f, &part) {
                    Some(x) => inner.push(x),
                    None => return true,
                }
            }
            match t.comp(*g, &inner) {
                Some(rhs) => lhs == rhs,
                None => true,
            }
        }
        Instance::EquivOuter { h, fs, sigma } => {
            // h = σ·g, so comp(h; fs) = σ⟨sizes⟩ · comp(g; f_{σ(1)}, ..., f_{σ(n)}).
            let Some(r) = t.comp(*h, fs) else { return true };
            let Some(g) = t.act(&sigma.inverse(), *h) else {
                return true;
            };
            let permuted: Vec<Mor> = (0..fs.len()).map(|i| fs[sigma.apply(i)]).collect();
            let Some(inner) = t.comp(g, &permuted) else {
                return true;
            };
            let sizes: Vec<usize> = fs.iter().map(|&f| t.arity(f)).collect();
            match t.act(&sigma.blocks(&sizes), inner) {
                Some(rhs) => r == rhs,
                None => true,
            }
        }
        Instance::EquivInner { g, fs, taus } => {
            let Some(r) = t.comp(*g, fs) else { return true };
            let mut acted = Vec::with_capacity(fs.len());
            for (f, tau) in fs.iter().zip(taus) {
                match t.act(tau, *f) {
                    Some(x) => acted.push(x),
                    None => return true,
                }
            }
            let Some(lhs) = t.comp(*g, &acted) else {
                return true;
            };
            match t.act(&Perm::direct_sum(taus), r) {
                Some(rhs) => lhs == rhs,
                None => true,
            }
        }
        Instance::Unary { morphism } => t.arity(*morphism) == 1,
        Instance::CategoryAction { f, sigma } => {
            !t.action_table().contains_key(&(*f, sigma.clone()))
        }
    }
}

struct Checker<'a> {
    t: &'a Tables,
    report: ValidationReport,
    budget: u64,
    stop_after: usize,
}

impl Checker<'_> {
    /// Returns `false` once the budget is spent.
    fn check(&mut self, inst: Instance) -> bool {
        if self.report.checked >= self.budget {
            self.report.complete = false;
            return false;
        }
        self.report.checked += 1;
        if !instance_holds(self.t, &inst) {
            self.report.violations.push(Violation {
                kind: kind_of(&inst),
                witness: witness(self.t, &inst),
                instance: inst,
            });
            if self.report.violations.len() >= self.stop_after {
                self.report.complete = false;
                return false;
            }
        }
        true
    }
}

fn tuples_of_perms(arities: &[usize]) -> Vec<Vec<Perm>> {
    let mut out = vec![Vec::new()];
    for &k in arities {
        let mut next = Vec::new();
        for prefix in &out {
            for p in Perm::all(k) {
                let mut v = prefix.clone();
                v.push(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Checks every axiom instance of `t`, stopping after `budget` instances.
pub fn validate_tables(t: &Tables, budget: u64) -> ValidationReport {
    validate_tables_until(t, budget, usize::MAX)
}

/// As [`validate_tables`], but stops once `stop_after` violations are found,
/// leaving the report incomplete.
pub fn validate_tables_until(t: &Tables, budget: u64, stop_after: usize) -> ValidationReport {
    let mut c = Checker {
        t,
        report: ValidationReport {
            complete: true,
            ..Default::default()
        },
        budget,
        stop_after: stop_after.max(1),
    };
    macro_rules! check {
        ($inst:expr) => {
            if !c.check($inst) {
                return c.report;
            }
        };
    }

    // Malformed tables: dangling ids and duplicate tokens.
    let mut seen = BTreeSet::new();
    for o in t.objects() {
        if !seen.insert(o.clone()) {
            check!(Instance::DuplicateObject { name: o.clone() });
        }
    }
    let mut seen = BTreeSet::new();
    for d in t.morphisms() {
        if !seen.insert(d.name.clone()) {
            check!(Instance::DuplicateMorphism {
                name: d.name.clone()
            });
        }
    }
    for m in 0..t.morphism_count() {
        check!(Instance::MorphismIds { morphism: m });
    }
    for (g, fs) in t.comp_table().keys() {
        check!(Instance::CompEntryIds {
            g: *g,
            fs: fs.clone()
        });
    }
    for (f, sigma) in t.action_table().keys() {
        check!(Instance::ActionEntryIds {
            f: *f,
            sigma: sigma.clone()
        });
    }
    let identities_ok = t.identities().len() == t.object_count()
        && t.identities().iter().all(|&i| i < t.morphism_count());
    for o in 0..t.object_count().max(t.identities().len()) {
        check!(Instance::IdentityEntry { object: o });
    }
    if c.report.violations.iter().any(|v| v.kind.is_malformed()) || !identities_ok {
        return c.report;
    }
    if c.report.has(ViolationKind::Identity) {
        // identity table typed wrongly: unit checks below would misfire
        // on index lookups but remain well-defined, so keep going.
    }

    // Typing of entries and closure.
    for m in 0..t.morphism_count() {
        check!(Instance::Arity { morphism: m });
    }
    for (g, fs) in t.comp_table().keys() {
        check!(Instance::CompEntry {
            g: *g,
            fs: fs.clone()
        });
    }
    for (f, sigma) in t.action_table().keys() {
        check!(Instance::ActionEntry {
            f: *f,
            sigma: sigma.clone()
        });
    }
    for g in 0..t.morphism_count() {
        if t.arity(g) > t.bound() {
            continue;
        }
        for fs in t.composable_tuples(g) {
            check!(Instance::MissingComp { g, fs });
        }
        for sigma in Perm::non_identity(t.arity(g)) {
            check!(Instance::MissingAction { f: g, sigma });
        }
    }

    // Laws.
    for m in 0..t.morphism_count() {
        check!(Instance::UnitLeft { f: m });
        if t.arity(m) <= t.bound() {
            check!(Instance::UnitRight { g: m });
        }
    }
    for f in 0..t.morphism_count() {
        let k = t.arity(f);
        if k < 2 {
            continue;
        }
        for sigma in Perm::all(k) {
            for tau in Perm::all(k) {
                if sigma.is_identity() && tau.is_identity() {
                    continue;
                }
                check!(Instance::GroupAction {
                    f,
                    sigma: sigma.clone(),
                    tau
                });
            }
        }
    }
    let entries: Vec<(Mor, Vec<Mor>, Mor)> = t
        .comp_table()
        .iter()
        .filter(|((g, fs), _)| t.composite_signature(*g, fs).is_some())
        .map(|((g, fs), h)| (*g, fs.clone(), *h))
        .collect();
    for (g, fs, h) in &entries {
        for hs in t.composable_tuples(*h) {
            check!(Instance::Assoc {
                g: *g,
                fs: fs.clone(),
                hs
            });
        }
    }
    for (g, fs, _) in &entries {
        let n = fs.len();
        for sigma in Perm::non_identity(n) {
            check!(Instance::EquivOuter {
                h: *g,
                fs: fs.clone(),
                sigma
            });
        }
        let arities: Vec<usize> = fs.iter().map(|&f| t.arity(f)).collect();
        for taus in tuples_of_perms(&arities) {
            if taus.iter().all(Perm::is_identity) {
                continue;
            }
            check!(Instance::EquivInner {
                g: *g,
                fs: fs.clone(),
                taus
            });
        }
    }
    c.report
}

pub fn validate_category_with(c: &FiniteCategory, budget: u64) -> ValidationReport {
    let t: &Tables = c;
    let mut report = validate_tables(t, budget);
    let mut extra = Vec::new();
    for m in 0..t.morphism_count() {
        let inst = Instance::Unary { morphism: m };
        if !instance_holds(t, &inst) {
            extra.push(inst);
        }
    }
    for (f, sigma) in t.action_table().keys() {
        extra.push(Instance::CategoryAction {
            f: *f,
            sigma: sigma.clone(),
        });
    }
    for inst in extra {
        report.violations.push(Violation {
            kind: kind_of(&inst),
            witness: witness(t, &inst),
            instance: inst,
        });
    }
    report
}

/// Checks closure, unit and associativity laws of a finite category.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    validate_category_with(c, DEFAULT_BUDGET)
}

/// Checks closure within the bound, unit, associativity, group-action and
/// equivariance laws of a truncated symmetric multicategory.
pub fn validate_multicat(m: &Multicat) -> ValidationReport {
    validate_tables(m, DEFAULT_BUDGET)
}

pub fn validate_multicat_with(m: &Multicat, budget: u64) -> ValidationReport {
    validate_tables(m, budget)
}
