//! The embedding E of categories into multicategories and its right
//! adjoint, the underlying category of unary morphisms.

use std::sync::Arc;

use crate::map::{Functor, MultiFunctor};
use crate::structure::{FiniteCategory, Multicat, Structure};

/// `E(C)` at truncation `k`: unary homs are those of `C`, everything else
/// is empty.
pub fn embed_e(c: &FiniteCategory, k: usize) -> Multicat {
    assert!(k >= 1, "truncation bound must be at least 1");
    Multicat::from_tables(c.tables().with_bound(k))
}

/// The category of unary morphisms of `m`.
pub fn underlying_1(m: &Multicat) -> FiniteCategory {
    FiniteCategory::from_tables(m.restrict_morphisms(|x| m.arity(x) == 1, 1))
}

/// Indices of the unary morphisms of `m`, in order; position `i` holds the
/// morphism of `m` that is morphism `i` of `underlying_1(m)`.
pub fn unary_morphisms(m: &Multicat) -> Vec<usize> {
    (0..m.morphism_count())
        .filter(|&x| m.arity(x) == 1)
        .collect()
}

/// `E(F)`.
pub fn embed_functor(f: &Functor, k: usize) -> MultiFunctor {
    MultiFunctor::new(
        Arc::new(embed_e(&f.source, k)),
        Arc::new(embed_e(&f.target, k)),
        f.objects.clone(),
        f.morphisms.clone(),
    )
}

/// `f₁`, the restriction of a multifunctor to unary morphisms.
pub fn underlying_functor(f: &MultiFunctor) -> Functor {
    let src = underlying_1(&f.source);
    let tgt = underlying_1(&f.target);
    let tgt_index = {
        let mut v = vec![usize::MAX; f.target.morphism_count()];
        for (i, m) in unary_morphisms(&f.target).into_iter().enumerate() {
            v[m] = i;
        }
        v
    };
    let morphisms = unary_morphisms(&f.source)
        .into_iter()
        .map(|m| tgt_index[f.morphisms[m]])
        .collect();
    Functor::new(Arc::new(src), Arc::new(tgt), f.objects.clone(), morphisms)
}

/// The counit `E(M₁) → M`, the identity on objects and unary morphisms.
pub fn counit(m: &Arc<Multicat>) -> MultiFunctor {
    let e = embed_e(&underlying_1(m), m.bound());
    MultiFunctor::new(
        Arc::new(e),
        m.clone(),
        (0..m.object_count()).collect(),
        unary_morphisms(m),
    )
}
