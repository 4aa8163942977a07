//! Multigraphs, symmetrization and free constructions.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::perm::Perm;
use crate::presentation::{CloseLimits, Presentation};
use crate::structure::{FiniteCategory, Graph, MultiGraph, Multicat, Structure};
use crate::tables::{Mor, MorphismDecl, Signature, Tables, TablesBuilder};

/// Token of `σ·m` for a non-identity `σ`: `m@2.1` lists the images.
pub fn perm_tag(name: &str, sigma: &Perm) -> String {
    if sigma.is_identity() {
        return name.to_string();
    }
    let images: Vec<String> = sigma.images().iter().map(|i| (i + 1).to_string()).collect();
    format!("{name}@{}", images.join("."))
}

/// `Sym(G)`: at `(a⃗; b)` the disjoint union over `σ ∈ Σ_k` of
/// `G(σ⁻¹·a⃗; b)`. The element `σ·g` carries the tag `σ` and the action
/// is left multiplication on tags.
pub fn sym(g: &MultiGraph) -> MultiGraph {
    assert!(!g.symmetric, "sym expects a nonsymmetric multigraph");
    let mut out = MultiGraph::new(g.name.clone(), g.bound, g.objects.clone());
    out.name = format!("Sym{}", g.name);
    out.symmetric = true;
    let mut index: BTreeMap<(Mor, Perm), Mor> = BTreeMap::new();
    for (m, d) in g.morphisms.iter().enumerate() {
        for rho in Perm::all(d.sig.arity()) {
            out.morphisms.push(MorphismDecl {
                name: perm_tag(&d.name, &rho),
                sig: d.sig.permuted(&rho),
            });
            index.insert((m, rho), out.morphisms.len() - 1);
        }
    }
    for ((m, rho), &e) in &index {
        for sigma in Perm::non_identity(rho.arity()) {
            out.action
                .insert((e, sigma.clone()), index[&(*m, sigma.compose(rho))]);
        }
    }
    out.canonicalize();
    out
}

/// The cell `(k+1, A)`: objects `1..k` and `*`, with `A` at `(1,...,k; *)`.
pub fn cell_multigraph(k: usize, a: &[&str]) -> MultiGraph {
    let mut objects: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    objects.push("*".to_string());
    let mut g = MultiGraph::new(format!("cell{k}"), k.max(1), objects);
    for name in a {
        g.morphisms.push(MorphismDecl {
            name: name.to_string(),
            sig: Signature::new((0..k).collect(), k),
        });
    }
    g.canonicalize();
    g
}

/// The graph `(2, A)`: objects `0`, `1` and one edge `0 -> 1` per element.
pub fn interval_graph(a: &[&str]) -> Graph {
    Graph {
        objects: vec!["0".to_string(), "1".to_string()],
        edges: a.iter().map(|n| (n.to_string(), 0, 1)).collect(),
    }
}

/// A multigraph as tables without identities or composition, for map
/// searches between multigraphs.
pub fn multigraph_tables(g: &MultiGraph) -> Tables {
    let action = if g.symmetric {
        g.action.clone()
    } else {
        BTreeMap::new()
    };
    Tables::from_parts(
        g.name.clone(),
        g.bound,
        g.objects.clone(),
        g.morphisms.clone(),
        Vec::new(),
        action,
        BTreeMap::new(),
    )
}

/// The underlying multigraph of `m`, forgetting composition, identities and,
/// unless `symmetric`, the action.
pub fn forget(m: &Tables, symmetric: bool) -> MultiGraph {
    let mut g = MultiGraph::new(m.name().to_string(), m.bound(), m.objects().to_vec());
    g.symmetric = symmetric;
    g.morphisms = m.morphisms().to_vec();
    if symmetric {
        g.action = m.action_table().clone();
    }
    g
}

/// A free structure together with its exactness flag and the image of each
/// generator.
#[derive(Clone, Debug)]
pub struct Free<T> {
    pub result: T,
    pub exact: bool,
    pub generators: Vec<Mor>,
}

/// The free truncated symmetric multicategory on a symmetric multigraph.
///
/// Exact when `g` is composite-free; otherwise composites are closed for at
/// most `depth` rounds and the result is flagged inexact if more remain.
pub fn free_symmulticat(g: &MultiGraph, k: usize, depth: usize) -> Result<Free<Multicat>> {
    assert!(
        g.symmetric,
        "free_symmulticat expects a symmetric multigraph"
    );
    if g.is_composite_free() {
        let mut b = TablesBuilder::new(format!("F{}", g.name), k);
        for o in &g.objects {
            b.object(o.clone());
        }
        let ms: Vec<Mor> = g
            .morphisms
            .iter()
            .filter(|d| d.sig.arity() <= k)
            .map(|d| b.morphism(d.name.clone(), d.sig.inputs.clone(), d.sig.output))
            .collect();
        let mut pos = BTreeMap::new();
        let mut j = 0;
        for (m, d) in g.morphisms.iter().enumerate() {
            if d.sig.arity() <= k {
                pos.insert(m, ms[j]);
                j += 1;
            }
        }
        for ((f, s), h) in &g.action {
            if let (Some(&f), Some(&h)) = (pos.get(f), pos.get(h)) {
                b.set_action(f, s.clone(), h);
            }
        }
        let built = b.build();
        let generators = (0..g.morphisms.len())
            .map(|m| pos.get(&m).map_or(usize::MAX, |&x| built.morphisms[x]))
            .collect();
        return Ok(Free {
            result: Multicat::from_tables(built.tables),
            exact: true,
            generators,
        });
    }
    let mut p = Presentation::new(k, g.objects.clone());
    let gens: Vec<usize> = g
        .morphisms
        .iter()
        .map(|d| p.generator(d.name.clone(), 0, d.sig.clone()))
        .collect();
    for ((f, s), h) in &g.action {
        p.relate_act(gens[*f], s.clone(), gens[*h]);
    }
    let limits = CloseLimits {
        max_rounds: depth,
        ..CloseLimits::default()
    };
    let c = p.close(&format!("F{}", g.name), limits)?;
    Ok(Free {
        generators: gens.iter().map(|&e| c.element[e]).collect(),
        result: Multicat::from_tables(c.tables),
        exact: c.exact,
    })
}

/// The path category of a graph. Exact when the graph is acyclic; otherwise
/// paths longer than `length_bound` are dropped, their composites left
/// undefined, and the result flagged inexact.
pub fn free_category(g: &Graph, length_bound: usize) -> Free<FiniteCategory> {
    let mut b = TablesBuilder::new("free", 1);
    for o in &g.objects {
        b.object(o.clone());
    }
    // paths as edge lists, first edge first
    let mut paths: BTreeMap<Vec<usize>, Mor> = BTreeMap::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    let mut generators = Vec::new();
    for (e, (name, s, t)) in g.edges.iter().enumerate() {
        let m = b.morphism(name.clone(), vec![*s], *t);
        paths.insert(vec![e], m);
        frontier.push(vec![e]);
        generators.push(m);
    }
    let mut exact = true;
    let mut len = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = g.edges[*p.last().unwrap()].2;
            for (e, (_, s, t)) in g.edges.iter().enumerate() {
                if *s != end {
                    continue;
                }
                if len + 1 > length_bound {
                    exact = false;
                    continue;
                }
                let mut q = p.clone();
                q.push(e);
                let name = q
                    .iter()
                    .rev()
                    .map(|&x| g.edges[x].0.as_str())
                    .collect::<Vec<_>>()
                    .join(".");
                let m = b.morphism(name, vec![g.edges[q[0]].1], *t);
                paths.insert(q.clone(), m);
                next.push(q);
            }
        }
        frontier = next;
        len += 1;
    }
    for (p, &m) in &paths {
        for (q, &n) in &paths {
            if g.edges[*p.last().unwrap()].2 != g.edges[q[0]].1 {
                continue;
            }
            let mut pq = p.clone();
            pq.extend_from_slice(q);
            if let Some(&h) = paths.get(&pq) {
                b.set_comp(n, vec![m], h);
            }
        }
    }
    let built = b.build();
    Free {
        generators: generators.iter().map(|&m| built.morphisms[m]).collect(),
        result: FiniteCategory::from_tables(built.tables),
        exact,
    }
}
