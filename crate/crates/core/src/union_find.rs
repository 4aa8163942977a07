//! Disjoint sets, plus a keyed quotient builder on top of them.

use std::collections::BTreeMap;

/// Union-find over `0..n` with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Adds a fresh singleton and returns its index.
    pub fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.rank.push(0);
        self.parent.len() - 1
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`. Returns `false` if they were
    /// already equal.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Quotient of a finite set of ordered keys by generated identifications.
///
/// Classes are reported with their minimum key as representative, and
/// listed in order of representatives.
#[derive(Clone, Debug)]
pub struct Quotient<T: Ord + Clone> {
    index: BTreeMap<T, usize>,
    keys: Vec<T>,
    uf: UnionFind,
}

impl<T: Ord + Clone> Default for Quotient<T> {
    fn default() -> Self {
        Quotient {
            index: BTreeMap::new(),
            keys: Vec::new(),
            uf: UnionFind::new(0),
        }
    }
}

impl<T: Ord + Clone> Quotient<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: T) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.uf.push();
        self.keys.push(key.clone());
        self.index.insert(key, i);
        i
    }

    pub fn contains(&self, key: &T) -> bool {
        self.index.contains_key(key)
    }

    /// Identifies two keys; both must already be present.
    pub fn identify(&mut self, a: &T, b: &T) -> bool {
        let ia = self.index[a];
        let ib = self.index[b];
        self.uf.union(ia, ib)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Equivalence classes, each sorted, ordered by representative.
    pub fn classes(&mut self) -> Vec<Vec<T>> {
        let mut groups: BTreeMap<usize, Vec<T>> = BTreeMap::new();
        for i in 0..self.keys.len() {
            let r = self.uf.find(i);
            groups.entry(r).or_default().push(self.keys[i].clone());
        }
        let mut out: Vec<Vec<T>> = groups
            .into_values()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// Canonical representative (the minimum key) of the class of `key`.
    pub fn representative(&mut self, key: &T) -> T {
        let i = self.index[key];
        let r = self.uf.find(i);
        let mut best: Option<&T> = None;
        for j in 0..self.keys.len() {
            if self.uf.find(j) == r {
                let k = &self.keys[j];
                if best.map_or(true, |b| k < b) {
                    best = Some(k);
                }
            }
        }
        best.expect("class is non-empty").clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
        let x = uf.push();
        assert_eq!(uf.find(x), x);
    }

    #[test]
    fn quotient_classes_are_canonical() {
        let mut q = Quotient::new();
        for k in ["d", "b", "a", "c"] {
            q.insert(k);
        }
        q.identify(&"d", &"b");
        assert_eq!(q.classes(), vec![vec!["a"], vec!["b", "d"], vec!["c"]]);
        assert_eq!(q.representative(&"d"), "b");
    }
}
