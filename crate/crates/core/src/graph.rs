use std::collections::BTreeMap;

/// Generator parameters `(t1, t2)` on the lower- and higher-indexed site of an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorPair {
    pub t1: f64,
    pub t2: f64,
}

impl GeneratorPair {
    pub fn new(t1: f64, t2: f64) -> Self {
        Self { t1, t2 }
    }

    pub fn swapped(self) -> Self {
        Self::new(self.t2, self.t1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkeletonEdge {
    pub i: usize,
    pub j: usize,
    pub witness: Option<GeneratorPair>,
}

/// Simple undirected graph over site indices, edges kept sorted by `(i, j)`
/// with `i < j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SkeletonGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Option<GeneratorPair>>,
}

impl SkeletonGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (i, j) in pairs {
            g.insert(i, j, None);
        }
        g
    }

    /// Inserts `{i, j}`. The witness is given in `(i, j)` order and stored in
    /// ascending index order. Parallel edges collapse into one.
    pub fn insert(&mut self, i: usize, j: usize, witness: Option<GeneratorPair>) {
        assert!(i != j, "self-loop {i}");
        assert!(i < self.n && j < self.n, "edge ({i}, {j}) out of range for n = {}", self.n);
        let (key, w) = if i < j {
            ((i, j), witness)
        } else {
            ((j, i), witness.map(GeneratorPair::swapped))
        };
        self.edges.entry(key).or_insert(w);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<GeneratorPair> {
        let w = *self.edges.get(&(i.min(j), i.max(j)))?;
        if i <= j {
            w
        } else {
            w.map(GeneratorPair::swapped)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = SkeletonEdge> + '_ {
        self.edges
            .iter()
            .map(|(&(i, j), &witness)| SkeletonEdge { i, j, witness })
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn is_subgraph_of(&self, other: &SkeletonGraph) -> bool {
        self.edges.keys().all(|&(i, j)| other.contains(i, j))
    }

    /// Same edge set, witnesses ignored.
    pub fn same_edges(&self, other: &SkeletonGraph) -> bool {
        self.n == other.n && self.edges.keys().eq(other.edges.keys())
    }
}
