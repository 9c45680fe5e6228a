//! Simple undirected graphs and vertex subsets.
//!
//! Vertices are dense ids `0..n`. Graphs are immutable after construction;
//! [`Graph::with_edge`] returns a new graph, which keeps edge-addition
//! chains cheap to reason about. Everything here is pure and safe to share
//! across threads.

use crate::error::{Error, Result};

/// A subset of `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from vertex ids. Panics if an id is out of range.
    pub fn from_vertices(universe: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Interprets the low `universe` bits of `mask` as membership.
    /// Only meaningful for universes of at most 64 vertices.
    pub(crate) fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.blocks[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let v = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(i * 64 + v)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple undirected graph: no loops, no multiple edges.
///
/// Edges are kept sorted as `(u, v)` pairs with `u < v`; adjacency lists are
/// sorted ascending. Both orders are part of the public contract because
/// downstream feasibility witnesses are reported per edge in this order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Endpoint order within a pair is irrelevant; `(v, u)` denotes the same
    /// edge as `(u, v)`. Self-loops, duplicate edges and out-of-range
    /// endpoints are domain errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::domain(format!("self-loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    /// Complete graph on `k` vertices.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        Self::from_edges(k, edges).expect("complete graph is simple")
    }

    /// Graph on `k` vertices with no edges.
    pub fn edgeless(k: usize) -> Self {
        Self::from_edges(k, []).expect("edgeless graph is simple")
    }

    /// Disjoint union; vertices of `h` are shifted up by `g.n()`.
    pub fn disjoint_union(g: &Graph, h: &Graph) -> Self {
        let shift = g.n;
        let edges = g
            .edges
            .iter()
            .copied()
            .chain(h.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_edges(g.n + h.n, edges).expect("union of simple graphs is simple")
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(g: &Graph, h: &Graph) -> Self {
        let shift = g.n;
        let cross = (0..g.n).flat_map(|u| (0..h.n).map(move |v| (u, v + shift)));
        let edges = g
            .edges
            .iter()
            .copied()
            .chain(h.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .chain(cross);
        Self::from_edges(g.n + h.n, edges).expect("join of simple graphs is simple")
    }

    /// A copy of the graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let edges = self.edges.iter().copied().chain([(u, v)]);
        Self::from_edges(self.n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Degree of `v` in the induced subgraph after deleting `s`,
    /// i.e. the number of neighbors of `v` outside `s`.
    ///
    /// `v` must lie outside `s`; `s` must live over this graph's vertices.
    pub fn degree_minus(&self, s: &VertexSet, v: usize) -> Result<usize> {
        if s.universe() != self.n {
            return Err(Error::domain(format!(
                "vertex set over universe {} used with graph on {} vertices",
                s.universe(),
                self.n
            )));
        }
        if v >= self.n {
            return Err(Error::domain(format!("vertex {v} outside 0..{}", self.n)));
        }
        if s.contains(v) {
            return Err(Error::domain(format!("vertex {v} is in the deleted set")));
        }
        Ok(self.adj[v].iter().filter(|&&w| !s.contains(w)).count())
    }

    /// Size of the union of the two open neighborhoods, for distinct `u`, `v`.
    pub fn neighborhood_union(&self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!(
                "vertex pair ({u}, {v}) outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::domain(format!(
                "neighborhood union of {u} with itself"
            )));
        }
        // merge the two sorted lists, counting distinct entries
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
            count += 1;
        }
        Ok(count + (a.len() - i) + (b.len() - j))
    }

    /// Minimum of [`Self::neighborhood_union`] over all nonadjacent distinct
    /// pairs, or `None` when no such pair exists (complete graphs and graphs
    /// on fewer than two vertices), in which case any lower-bound condition
    /// on it is vacuously satisfied.
    pub fn min_nonadjacent_neighborhood_union(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    let nc = self
                        .neighborhood_union(u, v)
                        .expect("u < v < n are distinct in-range vertices");
                    best = Some(best.map_or(nc, |b| b.min(nc)));
                }
            }
        }
        best
    }

    /// Connected components as vertex sets, ordered by smallest member id.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            seen[start] = true;
            queue.push(start);
            while let Some(v) = queue.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Per-vertex adjacency bitmasks; only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        let mut masks = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }
}

/// A path `0 - 1 - ... - (k-1)`.
#[cfg(test)]
pub(crate) fn path(k: usize) -> Graph {
    Graph::from_edges(k, (1..k).map(|v| (v - 1, v))).unwrap()
}

/// The cycle `0 - 1 - ... - (k-1) - 0`.
#[cfg(test)]
pub(crate) fn cycle(k: usize) -> Graph {
    assert!(k >= 3);
    Graph::from_edges(k, (0..k).map(|v| (v, (v + 1) % k))).unwrap()
}

/// The star with center 0 and `leaves` leaves.
#[cfg(test)]
pub(crate) fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}
