//! Permutations of `0..k` and the block operations needed for equivariance.
//!
//! A permutation is stored as its image list, `images[i] = σ(i)`. Acting on a
//! list of inputs moves the entry at position `i` to position `σ(i)`, so the
//! permuted list is `(a_{σ⁻¹(1)}, ..., a_{σ⁻¹(k)})`.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// Adjacent transposition swapping `i` and `i + 1`.
    pub fn transposition(k: usize, i: usize) -> Self {
        assert!(i + 1 < k, "transposition out of range");
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(i, i + 1);
        Perm(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.arity(), other.arity());
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// All permutations of `0..k` in lexicographic order of image lists.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == k {
                out.push(Perm(current.clone()));
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(k, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(k, &mut current, &mut used, &mut out);
        out
    }

    /// Non-identity permutations of `0..k`.
    pub fn non_identity(k: usize) -> Vec<Perm> {
        Perm::all(k)
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect()
    }

    /// Moves the entry at position `i` to position `σ(i)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.arity());
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.0[i]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.expect("bijection")).collect()
    }

    /// Block permutation moving whole blocks according to `self`.
    ///
    /// `sizes[j]` is the length of the block that ends up at block position
    /// `j`. In the source the block at position `i` is the one with index
    /// `σ(i)`; it is moved as a unit to position `σ(i)`.
    pub fn blocks(&self, sizes: &[usize]) -> Perm {
        assert_eq!(sizes.len(), self.arity());
        let mut target_offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            target_offsets.push(acc);
            acc += s;
        }
        let mut images = Vec::with_capacity(acc);
        for i in 0..self.arity() {
            let block = self.0[i];
            for t in 0..sizes[block] {
                images.push(target_offsets[block] + t);
            }
        }
        Perm(images)
    }

    /// Block sum `τ₁ ⊕ ... ⊕ τₙ`, acting on each block separately.
    pub fn direct_sum(parts: &[Perm]) -> Perm {
        let mut images = Vec::new();
        let mut offset = 0;
        for p in parts {
            images.extend(p.0.iter().map(|&j| j + offset));
            offset += p.arity();
        }
        Perm(images)
    }
}

impl fmt::Display for Perm {
    /// 1-based image list, e.g. `(2 1 3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(3).len(), 6);
        assert!(Perm::all(3)[0].is_identity());
        assert_eq!(Perm::non_identity(2), vec![Perm(vec![1, 0])]);
    }

    #[test]
    fn permute_follows_source_reindexing() {
        // σ = (1 2 3) ↦ (2 3 1): a_{σ⁻¹(j)} at position j.
        let s = Perm::from_images(vec![1, 2, 0]).unwrap();
        let out = s.permute(&["a", "b", "c"]);
        let inv = s.inverse();
        for j in 0..3 {
            assert_eq!(out[j], ["a", "b", "c"][inv.apply(j)]);
        }
    }

    #[test]
    fn permute_is_a_left_action() {
        for s in Perm::all(3) {
            for t in Perm::all(3) {
                let items = [10, 20, 30];
                assert_eq!(s.permute(&t.permute(&items)), s.compose(&t).permute(&items));
            }
        }
    }

    #[test]
    fn blocks_moves_contiguous_runs() {
        let swap = Perm::transposition(2, 0);
        // source order: block 1 (size 1) then block 0 (size 2).
        let b = swap.blocks(&[2, 1]);
        assert_eq!(b.permute(&["y", "x0", "x1"]), vec!["x0", "x1", "y"]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![2, 0]).is_none());
    }
}
