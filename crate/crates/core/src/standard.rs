//! Small named categories and multicategories used throughout the tests
//! and the CLI.

use std::collections::BTreeMap;

use crate::structure::{FiniteCategory, Multicat, Structure};
use crate::tables::TablesBuilder;

/// Builds a category from names. `table` lists `(g, f, g∘f)` for every
/// composable pair of non-identity arrows; identity entries are implicit.
pub fn category_from(
    name: &str,
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    table: &[(&str, &str, &str)],
) -> FiniteCategory {
    let mut b = TablesBuilder::new(name, 1);
    let mut obj = BTreeMap::new();
    for o in objects {
        obj.insert(o.to_string(), b.object(*o));
    }
    let mut mor = BTreeMap::new();
    for o in objects {
        mor.insert(format!("id_{o}"), b.identity(obj[*o]));
    }
    for (m, s, t) in arrows {
        mor.insert(m.to_string(), b.morphism(*m, vec![obj[*s]], obj[*t]));
    }
    for (g, f, h) in table {
        b.set_comp(mor[*g], vec![mor[*f]], mor[*h]);
    }
    FiniteCategory::from_tables(b.build().tables)
}

/// One object `*`, identity only.
pub fn terminal() -> FiniteCategory {
    category_from("terminal", &["*"], &[], &[])
}

/// The empty category.
pub fn empty() -> FiniteCategory {
    category_from("empty", &[], &[], &[])
}

/// Objects `0`, `1` and one arrow `j : 0 -> 1`.
pub fn arrow() -> FiniteCategory {
    category_from("arrow", &["0", "1"], &[("j", "0", "1")], &[])
}

/// The walking isomorphism: `s : x -> y` with inverse `s_inv`.
pub fn interval_xy() -> FiniteCategory {
    category_from(
        "interval",
        &["x", "y"],
        &[("s", "x", "y"), ("s_inv", "y", "x")],
        &[("s_inv", "s", "id_x"), ("s", "s_inv", "id_y")],
    )
}

/// The monoid `{1, e}` with `e∘e = e`, as a one-object category.
pub fn idempotent_monoid() -> FiniteCategory {
    category_from("e", &["*"], &[("e", "*", "*")], &[("e", "e", "e")])
}

/// The group of order two as a one-object category.
pub fn z2() -> FiniteCategory {
    category_from("z2", &["*"], &[("g", "*", "*")], &[("g", "g", "id_*")])
}

/// Two parallel arrows `u, v : 0 -> 1`.
pub fn parallel_pair() -> FiniteCategory {
    category_from(
        "parallel",
        &["0", "1"],
        &[("u", "0", "1"), ("v", "0", "1")],
        &[],
    )
}

/// `0 -j-> 1 -k-> 2` with composite `kj`.
pub fn composable_pair() -> FiniteCategory {
    category_from(
        "composable",
        &["0", "1", "2"],
        &[("j", "0", "1"), ("k", "1", "2"), ("kj", "0", "2")],
        &[("k", "j", "kj")],
    )
}

/// The walking split idempotent: `e = s∘p` on `x`, with `p∘s = id_r`.
pub fn split_idempotent() -> FiniteCategory {
    category_from(
        "split",
        &["r", "x"],
        &[("e", "x", "x"), ("p", "x", "r"), ("s", "r", "x")],
        &[
            ("e", "e", "e"),
            ("p", "s", "id_r"),
            ("s", "p", "e"),
            ("p", "e", "p"),
            ("e", "s", "s"),
        ],
    )
}

/// Categories with at most two objects used as test targets when checking
/// universal properties.
pub fn small_categories() -> Vec<FiniteCategory> {
    use crate::constructions::{discrete, indiscrete};
    vec![
        terminal(),
        discrete(&["a", "b"]),
        arrow(),
        interval_xy(),
        idempotent_monoid(),
        split_idempotent(),
        z2(),
        indiscrete(&["a", "b"]),
        parallel_pair(),
    ]
}

/// Multicategories with at most two objects at bound `k`: `Com_k` and
/// `E` of every small category.
pub fn small_multicats(k: usize) -> Vec<Multicat> {
    let mut out = vec![com(k)];
    out.extend(
        small_categories()
            .iter()
            .map(|c| crate::constructions::embed_e(c, k)),
    );
    out
}

/// The commutative multicategory truncated at `k`: one object and one
/// operation `c<n>` of each arity `n ≤ k` (arity 1 is the identity).
pub fn com(k: usize) -> Multicat {
    let mut b = TablesBuilder::new(format!("Com{k}"), k);
    let star = b.object("*");
    let ops: Vec<usize> = (0..=k)
        .map(|n| {
            if n == 1 {
                b.identity(star)
            } else {
                b.morphism(format!("c{n}"), vec![star; n], star)
            }
        })
        .collect();
    for n in 2..=k {
        for sigma in crate::perm::Perm::non_identity(n) {
            b.set_action(ops[n], sigma, ops[n]);
        }
    }
    for n in 0..=k {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for t in &tuples {
                for a in 0..=k {
                    let mut v = t.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            tuples = next;
        }
        for t in tuples {
            let total: usize = t.iter().sum();
            if total <= k {
                b.set_comp(ops[n], t.iter().map(|&a| ops[a]).collect(), ops[total]);
            }
        }
    }
    Multicat::from_tables(b.build().tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate_category, validate_multicat};

    #[test]
    fn named_categories_are_valid() {
        for c in [empty(), composable_pair()]
            .into_iter()
            .chain(small_categories())
        {
            let r = validate_category(&c);
            assert!(r.ok(), "{}: {r}", c.name());
        }
    }

    #[test]
    fn com_is_valid() {
        for k in 1..=3 {
            let r = validate_multicat(&com(k));
            assert!(r.ok(), "{r}");
            assert_eq!(com(k).morphism_count(), k + 1);
        }
    }
}
