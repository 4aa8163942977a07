//! The folklore model structure on symmetric multicategories at Set
//! level: its classes of maps as predicates, a brute-force lifting solver,
//! generating sets at truncation `K`, and an empirical check of the
//! recognition premises.

use std::fmt;
use std::sync::Arc;

use crate::colimits::{bounded_pushout_oracle, OracleLimits};
use crate::constructions::{
    cell_multigraph, embed_functor, free_symmulticat, sym, underlying_functor,
};
use crate::error::{Error, Result};
use crate::map::{Functor, Map, MultiFunctor};
use crate::search::{enumerate_maps, MapSearch};
use crate::standard::{empty, interval_xy, terminal};
use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::Obj;

fn isomorphic_objects(c: &FiniteCategory, x: Obj, y: Obj) -> bool {
    c.homs(x, y).iter().any(|&u| c.is_iso(u))
}

/// Every object of the target is isomorphic to an object in the image.
pub fn is_essentially_surjective(f: &Functor) -> bool {
    let d = &f.target;
    (0..d.object_count()).all(|y| f.objects.iter().any(|&x| isomorphic_objects(d, x, y)))
}

/// Every isomorphism `v : F x → y'` lifts to an isomorphism `u : x → x'`
/// with `F u = v`.
pub fn is_isofibration(f: &Functor) -> bool {
    let (c, d) = (&f.source, &f.target);
    (0..c.object_count()).all(|x| {
        let fx = f.objects[x];
        (0..d.object_count()).all(|y| {
            d.homs(fx, y).iter().filter(|&&v| d.is_iso(v)).all(|&v| {
                (0..c.object_count()).any(|x2| {
                    c.homs(x, x2)
                        .iter()
                        .any(|&u| f.morphisms[u] == v && c.is_iso(u))
                })
            })
        })
    })
}

pub fn is_equivalence(f: &Functor) -> bool {
    f.is_full_faithful() && is_essentially_surjective(f)
}

/// Full and faithful with `f₁` essentially surjective.
pub fn is_multi_equivalence(f: &MultiFunctor) -> bool {
    f.is_full_faithful() && is_essentially_surjective(&underlying_functor(f))
}

/// `f₁` is an isofibration. Every map of sets is a fibration in the
/// minimal model structure, so there is no local condition.
pub fn is_multi_fibration(f: &MultiFunctor) -> bool {
    is_isofibration(&underlying_functor(f))
}

/// Surjective on objects and locally bijective.
pub fn is_trivial_fibration<S: Structure>(f: &Map<S>) -> bool {
    f.is_surjective_on_objects() && f.is_full_faithful()
}

/// Injective on objects.
pub fn is_cofibration<S: Structure>(f: &Map<S>) -> bool {
    f.is_injective_on_objects()
}

/// A commuting square `p ∘ top = bottom ∘ i`; a lift is `l` with
/// `l ∘ i = top` and `p ∘ l = bottom`.
#[derive(Clone, Debug)]
pub struct LiftingProblem<S: Structure> {
    pub i: Map<S>,
    pub p: Map<S>,
    pub top: Map<S>,
    pub bottom: Map<S>,
}

impl<S: Structure> LiftingProblem<S> {
    /// The four maps fit together as a square.
    pub fn is_square(&self) -> bool {
        let same = |x: &Arc<S>, y: &Arc<S>| x.tables().same_tables(y.tables());
        same(&self.i.source, &self.top.source)
            && same(&self.i.target, &self.bottom.source)
            && same(&self.top.target, &self.p.source)
            && same(&self.bottom.target, &self.p.target)
    }

    pub fn commutes(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let a = self.top.then(&self.p);
        let b = self.i.then(&self.bottom);
        a.objects == b.objects && a.morphisms == b.morphisms
    }
}

fn preimages(assign: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (x, &y) in assign.iter().enumerate() {
        out[y].push(x);
    }
    out
}

/// All lifts, in search order (objects first, then morphisms, each
/// lexicographically).
pub fn has_lifting<S: Structure>(prob: &LiftingProblem<S>, budget: u64) -> Result<Vec<Map<S>>> {
    if !prob.commutes() {
        return Err(Error::Invalid("lifting square does not commute".into()));
    }
    let (b, x) = (&prob.i.target, &prob.p.source);
    let obj_pre = preimages(&prob.p.objects, prob.p.tgt().object_count());
    let mor_pre = preimages(&prob.p.morphisms, prob.p.tgt().morphism_count());
    let mut search = MapSearch::new(b.tables(), x.tables()).budget(budget);
    for o in 0..b.tables().object_count() {
        search.restrict_object(o, &obj_pre[prob.bottom.objects[o]]);
    }
    for m in 0..b.tables().morphism_count() {
        search.restrict_morphism(m, &mor_pre[prob.bottom.morphisms[m]]);
    }
    for (a, &o) in prob.i.objects.iter().enumerate() {
        search.restrict_object(o, &[prob.top.objects[a]]);
    }
    for (a, &m) in prob.i.morphisms.iter().enumerate() {
        search.restrict_morphism(m, &[prob.top.morphisms[a]]);
    }
    Ok(search
        .run()?
        .into_iter()
        .map(|s| Map::new(b.clone(), x.clone(), s.objects, s.morphisms))
        .collect())
}

/// Every commuting square from `i` (left) to `p` (right).
pub fn squares<S: Structure>(
    i: &Map<S>,
    p: &Map<S>,
    budget: u64,
) -> Result<Vec<LiftingProblem<S>>> {
    let mut out = Vec::new();
    let obj_pre = preimages(&p.objects, p.tgt().object_count());
    let mor_pre = preimages(&p.morphisms, p.tgt().morphism_count());
    for bottom in enumerate_maps(&i.target, &p.target, budget)? {
        let bi = i.then(&bottom);
        let mut search = MapSearch::new(i.src(), p.src()).budget(budget);
        for o in 0..i.src().object_count() {
            search.restrict_object(o, &obj_pre[bi.objects[o]]);
        }
        for m in 0..i.src().morphism_count() {
            search.restrict_morphism(m, &mor_pre[bi.morphisms[m]]);
        }
        for s in search.run()? {
            out.push(LiftingProblem {
                i: i.clone(),
                p: p.clone(),
                top: Map::new(i.source.clone(), p.source.clone(), s.objects, s.morphisms),
                bottom: bottom.clone(),
            });
        }
    }
    Ok(out)
}

/// The first square from some `g ∈ maps` to `p` with no lift, if any.
pub fn rlp_failure<S: Structure>(
    p: &Map<S>,
    maps: &[Map<S>],
    budget: u64,
) -> Result<Option<(usize, LiftingProblem<S>)>> {
    for (k, g) in maps.iter().enumerate() {
        for sq in squares(g, p, budget)? {
            if has_lifting(&sq, budget)?.is_empty() {
                return Ok(Some((k, sq)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    I,
    J,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::I => "I",
            Label::J => "J",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub label: Label,
    pub bound: usize,
    pub maps: Vec<MultiFunctor>,
    /// One short description per map.
    pub names: Vec<String>,
}

fn cell(k: usize, arrows: &[&str], bound: usize) -> Arc<Multicat> {
    let free = free_symmulticat(&sym(&cell_multigraph(k, arrows)), bound, 1)
        .expect("cells are composite-free");
    debug_assert!(free.exact);
    Arc::new(free.result)
}

/// Identity on objects; morphisms matched by name after renaming the
/// arrow `n` to `m` (tags such as `n@2.1` follow).
fn cell_map(src: &Arc<Multicat>, tgt: &Arc<Multicat>) -> MultiFunctor {
    let objects = (0..src.object_count())
        .map(|o| tgt.object_index(src.object_name(o)).unwrap())
        .collect();
    let morphisms = (0..src.morphism_count())
        .map(|x| {
            let name = src.morphism_name(x);
            let renamed = match name.strip_prefix('n') {
                Some(rest) => format!("m{rest}"),
                None => name.to_string(),
            };
            tgt.morphism_index(&renamed).unwrap()
        })
        .collect();
    MultiFunctor::new(src.clone(), tgt.clone(), objects, morphisms)
}

/// `E(∅ → 1)` and, for every `0 ≤ k ≤ K`, the maps of free symmetric
/// multicategories on a `k`-ary cell induced by `∅ → ∗` and `∗∗ → ∗`.
pub fn generating_i(bound: usize) -> GeneratingSet {
    assert!(bound >= 1, "truncation bound must be at least 1");
    let e0 = Arc::new(empty());
    let e1 = Arc::new(terminal());
    let mut maps = vec![embed_functor(&Functor::new(e0, e1, vec![], vec![]), bound)];
    let mut names = vec!["E(0->1)".to_string()];
    for k in 0..=bound {
        let none = cell(k, &[], bound);
        let one = cell(k, &["m"], bound);
        let two = cell(k, &["m", "n"], bound);
        maps.push(cell_map(&none, &one));
        names.push(format!("cell{k}(0->1)"));
        maps.push(cell_map(&two, &one));
        names.push(format!("cell{k}(2->1)"));
    }
    GeneratingSet {
        label: Label::I,
        bound,
        maps,
        names,
    }
}

/// `δ_y : 1 → [x, y]`, the inclusion of `x`.
pub fn delta_y() -> Functor {
    let xy = Arc::new(interval_xy());
    let x = xy.object_index("x").unwrap();
    Functor::new(
        Arc::new(terminal()),
        xy.clone(),
        vec![x],
        vec![xy.identity(x)],
    )
}

/// The single map `E(δ_y)`.
pub fn generating_j(bound: usize) -> GeneratingSet {
    GeneratingSet {
        label: Label::J,
        bound,
        maps: vec![embed_functor(&delta_y(), bound)],
        names: vec!["E(delta_y)".to_string()],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseFailure {
    /// `'a'`, `'b'` or `'c'`
    pub clause: char,
    pub item: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct PremiseReport {
    pub bound: usize,
    /// Instances checked per clause.
    pub checked: [usize; 3],
    pub counterexamples: Vec<PremiseFailure>,
    /// Instances skipped because a search or the oracle ran out of budget.
    pub skipped: Vec<PremiseFailure>,
}

impl PremiseReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for PremiseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "truncation K = {} (cells of arity k <= {} only)",
            self.bound, self.bound
        )?;
        let labels = [
            "(a) RLP(I) <=> trivial fibration",
            "(b) W and RLP(J) <=> RLP(I)",
            "(c) pushouts of J-maps lie in W",
        ];
        for (k, l) in labels.iter().enumerate() {
            let c = (b'a' + k as u8) as char;
            let bad = self
                .counterexamples
                .iter()
                .filter(|x| x.clause == c)
                .count();
            writeln!(f, "{l}: {} checked, {bad} counterexamples", self.checked[k])?;
        }
        for x in &self.counterexamples {
            writeln!(
                f,
                "  counterexample ({}) #{}: {}",
                x.clause, x.item, x.detail
            )?;
        }
        for x in &self.skipped {
            writeln!(f, "  skipped ({}) #{}: {}", x.clause, x.item, x.detail)?;
        }
        Ok(())
    }
}

/// Checks, on a finite sample:
/// (a) `RLP(I) ⇔ trivial fibration`,
/// (b) `multi-equivalence ∧ RLP(J) ⇔ RLP(I)`,
/// (c) pushing out the `J`-map along each anchor `E(1) → M` gives a
/// multi-equivalence `M → N`.
pub fn check_premises(
    sample: &[MultiFunctor],
    anchors: &[MultiFunctor],
    i: &GeneratingSet,
    j: &GeneratingSet,
    budget: u64,
    limits: OracleLimits,
) -> PremiseReport {
    let mut report = PremiseReport {
        bound: i.bound,
        ..Default::default()
    };
    let fail = |clause, item, detail: String| PremiseFailure {
        clause,
        item,
        detail,
    };
    for (n, f) in sample.iter().enumerate() {
        let rlp_i = match rlp_failure(f, &i.maps, budget) {
            Ok(x) => x,
            Err(e) => {
                report.skipped.push(fail('a', n, e.to_string()));
                continue;
            }
        };
        let triv = is_trivial_fibration(f);
        report.checked[0] += 1;
        if rlp_i.is_none() != triv {
            let why = match &rlp_i {
                Some((k, _)) => format!("no lift against {}", i.names[*k]),
                None => "lifts against all of I".to_string(),
            };
            report
                .counterexamples
                .push(fail('a', n, format!("trivial fibration = {triv}, {why}")));
        }
        let rlp_j = match rlp_failure(f, &j.maps, budget) {
            Ok(x) => x.is_none(),
            Err(e) => {
                report.skipped.push(fail('b', n, e.to_string()));
                continue;
            }
        };
        let w = is_multi_equivalence(f);
        report.checked[1] += 1;
        if (w && rlp_j) != rlp_i.is_none() {
            report.counterexamples.push(fail(
                'b',
                n,
                format!("W = {w}, RLP(J) = {rlp_j}, RLP(I) = {}", rlp_i.is_none()),
            ));
        }
    }
    for (n, x) in anchors.iter().enumerate() {
        for g in &j.maps {
            let r = match bounded_pushout_oracle(x, g, limits) {
                Ok(r) if r.exact => r,
                Ok(_) => {
                    report
                        .skipped
                        .push(fail('c', n, "oracle did not reach a fixpoint".into()));
                    continue;
                }
                Err(e) => {
                    report.skipped.push(fail('c', n, e.to_string()));
                    continue;
                }
            };
            report.checked[2] += 1;
            if !is_multi_equivalence(&r.leg_c) {
                report.counterexamples.push(fail(
                    'c',
                    n,
                    format!(
                        "{} -> {} is not a multi-equivalence",
                        x.tgt().name(),
                        r.object.name()
                    ),
                ));
            }
        }
    }
    report
}

/// Every map `E(1) → M`, one per object of `M`.
pub fn anchors(m: &Arc<Multicat>) -> Vec<MultiFunctor> {
    let one = generating_j(m.bound()).maps[0].source.clone();
    (0..m.object_count())
        .map(|o| MultiFunctor::new(one.clone(), m.clone(), vec![o], vec![m.identity(o)]))
        .collect()
}
