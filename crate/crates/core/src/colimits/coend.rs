//! Coends `∫^x W(x, x)` of set-valued profunctors on finite categories.

use std::collections::BTreeMap;

use crate::structure::FiniteCategory;
use crate::tables::{Mor, Obj};
use crate::union_find::Quotient;

/// A functor `W : C^op × C → Set` given elementwise.
pub trait Profunctor {
    type Elem: Ord + Clone;
    fn elements(&self, x: Obj, y: Obj) -> Vec<Self::Elem>;
    /// `W(h, y)(w)` for `h : x → x'` and `w ∈ W(x', y)`.
    fn left(&self, h: Mor, w: &Self::Elem) -> Self::Elem;
    /// `W(x, h)(w)` for `h : y → y'` and `w ∈ W(x, y)`.
    fn right(&self, h: Mor, w: &Self::Elem) -> Self::Elem;
}

/// The coend as equivalence classes of `(x, w)` with `w ∈ W(x, x)`.
#[derive(Clone, Debug)]
pub struct Coend<E: Ord + Clone> {
    /// Classes in order of their minimum member.
    pub classes: Vec<Vec<(Obj, E)>>,
    /// Class index of every `(x, w)`.
    pub injection: BTreeMap<(Obj, E), usize>,
}

impl<E: Ord + Clone> Coend<E> {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The canonical (minimum) representative of a class.
    pub fn representative(&self, class: usize) -> &(Obj, E) {
        &self.classes[class][0]
    }
}

/// Quotient of `∐_x W(x, x)` identifying `W(h, x)(w) ~ W(y, h)(w)` for every
/// `h : x → y` and `w ∈ W(y, x)`.
pub fn coend_set<P: Profunctor>(index: &FiniteCategory, w: &P) -> Coend<P::Elem> {
    let mut q: Quotient<(Obj, P::Elem)> = Quotient::new();
    for x in 0..index.object_count() {
        for e in w.elements(x, x) {
            q.insert((x, e));
        }
    }
    for h in 0..index.morphism_count() {
        let (x, y) = (index.src(h), index.tgt(h));
        for e in w.elements(y, x) {
            let a = (x, w.left(h, &e));
            let b = (y, w.right(h, &e));
            q.identify(&a, &b);
        }
    }
    let classes = q.classes();
    let mut injection = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for k in c {
            injection.insert(k.clone(), i);
        }
    }
    Coend { classes, injection }
}

/// A profunctor given by explicit tables.
#[derive(Clone, Debug, Default)]
pub struct TableProfunctor {
    pub elements: BTreeMap<(Obj, Obj), Vec<String>>,
    pub left: BTreeMap<(Mor, String), String>,
    pub right: BTreeMap<(Mor, String), String>,
}

impl Profunctor for TableProfunctor {
    type Elem = String;

    fn elements(&self, x: Obj, y: Obj) -> Vec<String> {
        self.elements.get(&(x, y)).cloned().unwrap_or_default()
    }

    fn left(&self, h: Mor, w: &String) -> String {
        self.left
            .get(&(h, w.clone()))
            .cloned()
            .unwrap_or_else(|| w.clone())
    }

    fn right(&self, h: Mor, w: &String) -> String {
        self.right
            .get(&(h, w.clone()))
            .cloned()
            .unwrap_or_else(|| w.clone())
    }
}

impl TableProfunctor {
    /// Checks that both reindexings are functorial on the index category.
    pub fn is_functorial(&self, index: &FiniteCategory) -> bool {
        let n = index.object_count();
        for x in 0..n {
            for y in 0..n {
                for e in self.elements(x, y) {
                    if self.left(index.identity(x), &e) != e
                        || self.right(index.identity(y), &e) != e
                    {
                        return false;
                    }
                }
            }
        }
        for ((g, fs), &h) in index.comp_table() {
            let f = fs[0];
            // left is contravariant: W(g∘f) = W(f) W(g)
            let (a, b) = (index.src(f), index.tgt(*g));
            for y in 0..n {
                for e in self.elements(b, y) {
                    if self.left(h, &e) != self.left(f, &self.left(*g, &e)) {
                        return false;
                    }
                }
                for e in self.elements(y, a) {
                    if self.right(h, &e) != self.right(*g, &self.right(f, &e)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
