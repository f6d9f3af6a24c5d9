//! Simple undirected graphs on at most [`MAX_ORDER`] vertices, stored as one
//! adjacency bit-row per vertex, together with the cycle and decomposition
//! types shared by every other module.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest supported order; one adjacency row fits in a `u32`.
pub const MAX_ORDER: usize = 32;

/// Words needed for an [`EdgeSet`] over `K_32` (496 edges).
const EDGE_WORDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cycle {0:?} is not a simple cycle of the graph")]
    InvalidCycle(Vec<usize>),
}

/// Iterates the set bit positions of `mask` in ascending order.
#[inline]
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Position of the pair `{i, j}` in the lexicographic order of all pairs of `K_n`.
#[inline]
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(n: usize, mut index: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if index < row {
            return (i, i + 1 + index);
        }
        index -= row;
    }
    panic!("edge index out of range for order {n}");
}

/// Number of vertex pairs of `K_n`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// ⌊(n−1)/2⌋, the number of cycles Hajós' conjecture allows for order `n`.
pub fn hajos_bound(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// A set of edges of `K_n`, indexed lexicographically by [`edge_index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    n: usize,
    words: [u64; EDGE_WORDS],
}

impl EdgeSet {
    pub fn empty(n: usize) -> Self {
        EdgeSet { n, words: [0; EDGE_WORDS] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < pair_count(self.n));
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        self.words[index / 64] &= !(1 << (index % 64));
    }

    pub fn toggle(&mut self, index: usize) {
        self.words[index / 64] ^= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
        out
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    /// Edge indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// Edges as `(i, j)` pairs with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.indices().map(move |e| edge_endpoints(n, e))
    }

    pub fn first(&self) -> Option<usize> {
        self.indices().next()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Simple undirected graph with symmetric adjacency bit-rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { n, adj: [0; MAX_ORDER] })
    }

    /// Builds a graph from an edge list; duplicates collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Graph on `n` vertices whose edges are `edges`.
    pub fn from_edge_set(edges: &EdgeSet) -> Self {
        let mut g = Graph { n: edges.order(), adj: [0; MAX_ORDER] };
        for (u, v) in edges.pairs() {
            g.set_edge(u, v);
        }
        g
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n]
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Mask of all vertex ids `0..n`.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Vertices with at least one incident edge.
    pub fn support(&self) -> u32 {
        self.rows()
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0, |acc, (v, _)| acc | 1 << v)
    }

    /// Edges as `(i, j)` pairs with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| bits(self.adj[i] & !((2u64 << i) - 1) as u32).map(move |j| (i, j)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut s = EdgeSet::empty(self.n);
        for (i, j) in self.edges() {
            s.insert(edge_index(self.n, i, j));
        }
        s
    }

    /// Subgraph on the same vertex set keeping only the edges in `edges`.
    pub fn restrict_to(&self, edges: &EdgeSet) -> Graph {
        debug_assert_eq!(edges.order(), self.n);
        let g = Graph::from_edge_set(edges);
        debug_assert!(g.rows().iter().zip(self.rows()).all(|(a, b)| a & !b == 0));
        g
    }

    /// Image of the graph under `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph { n: self.n, adj: [0; MAX_ORDER] };
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Every vertex degree is even (isolated vertices allowed).
    pub fn is_even(&self) -> bool {
        self.rows().iter().all(|r| r.count_ones() % 2 == 0)
    }

    /// Vertices reachable from `start`, as a mask.
    pub fn component_of(&self, start: usize) -> u32 {
        self.reach_within(start, self.vertex_mask())
    }

    /// Vertices reachable from `start` using only vertices in `allowed`.
    pub(crate) fn reach_within(&self, start: usize, allowed: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connectivity of the edge support; an edgeless graph is connected only
    /// when it has a single vertex. Isolated vertices are ignored otherwise.
    pub fn is_connected(&self) -> bool {
        let support = self.support();
        if support == 0 {
            return self.n == 1;
        }
        let start = support.trailing_zeros() as usize;
        self.component_of(start) & support == support
    }

    /// All `n` vertices lie in one component.
    pub fn is_spanning_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Spanning-connected, at least three vertices and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_spanning_connected() {
            return false;
        }
        let all = self.vertex_mask();
        (0..self.n).all(|v| {
            let rest = all & !(1 << v);
            let start = rest.trailing_zeros() as usize;
            self.reach_within(start, rest) == rest
        })
    }

    /// Even, spanning-connected and with at least one edge.
    pub fn is_eulerian(&self) -> bool {
        self.size() > 0 && self.is_even() && self.is_spanning_connected()
    }

    /// Breadth-first edge distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for w in self.neighbor_iter(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Deletes the edges of `cycle`. The cycle must be valid for this graph.
    pub fn remove_cycle(&self, cycle: &Cycle) -> Result<Graph, GraphError> {
        if !validate_cycle(self, cycle) {
            return Err(GraphError::InvalidCycle(cycle.vertices().to_vec()));
        }
        let mut g = *self;
        for (u, v) in cycle.edges() {
            g.clear_edge(u, v);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A simple cycle given by its vertex sequence; the closing edge is implied.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Self {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive pairs including the closing one, each as `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| {
            let (a, b) = (self.0[i], self.0[(i + 1) % k]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
    }

    pub fn edge_set(&self, n: usize) -> EdgeSet {
        let mut s = EdgeSet::empty(n);
        for (a, b) in self.edges() {
            s.insert(edge_index(n, a, b));
        }
        s
    }

    /// Rotation/reflection-independent form: starts at the smallest vertex and
    /// continues towards the smaller of its two cycle neighbours.
    pub fn normalized(&self) -> Cycle {
        let k = self.0.len();
        if k == 0 {
            return self.clone();
        }
        let (pos, _) = self.0.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
        let fwd = self.0[(pos + 1) % k];
        let bwd = self.0[(pos + k - 1) % k];
        let out = if fwd <= bwd {
            (0..k).map(|i| self.0[(pos + i) % k]).collect()
        } else {
            (0..k).map(|i| self.0[(pos + k - i) % k]).collect()
        };
        Cycle(out)
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.0)
    }
}

impl From<Vec<usize>> for Cycle {
    fn from(v: Vec<usize>) -> Self {
        Cycle(v)
    }
}

/// Cycles partitioning the edge set of a graph of order `host_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub cycles: Vec<Cycle>,
    pub host_order: usize,
}

impl Decomposition {
    pub fn new(host_order: usize, cycles: Vec<Cycle>) -> Self {
        Decomposition { cycles, host_order }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn within_bound(&self) -> bool {
        self.cycles.len() <= hajos_bound(self.host_order)
    }

    /// Edge sets of the cycles, sorted, for comparing partitions regardless of
    /// cycle order or orientation.
    pub fn edge_partition(&self) -> Vec<EdgeSet> {
        let mut parts: Vec<EdgeSet> = self.cycles.iter().map(|c| c.edge_set(self.host_order)).collect();
        parts.sort();
        parts
    }
}

/// Why a [`Decomposition`] fails to partition a graph's edges into cycles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("host order {found} does not match graph order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("cycle {index} is not a simple cycle of the graph")]
    InvalidCycle { index: usize },
    #[error("edge {edge:?} of cycle {index} is already used by an earlier cycle")]
    DuplicatedEdge { index: usize, edge: (usize, usize) },
    #[error("edge {edge:?} is not covered by any cycle")]
    UncoveredEdge { edge: (usize, usize) },
}

/// True iff `cycle` has at least three distinct vertices and each cyclically
/// consecutive pair is an edge of `g`.
pub fn validate_cycle(g: &Graph, cycle: &Cycle) -> bool {
    let vs = cycle.vertices();
    if vs.len() < 3 {
        return false;
    }
    let mut seen = 0u64;
    for &v in vs {
        if v >= g.order() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    cycle.edges().all(|(a, b)| g.has_edge(a, b))
}

pub fn validate_decomposition(g: &Graph, d: &Decomposition) -> Result<(), DecompositionViolation> {
    let n = g.order();
    if d.host_order != n {
        return Err(DecompositionViolation::OrderMismatch { expected: n, found: d.host_order });
    }
    let mut used = EdgeSet::empty(n);
    for (index, c) in d.cycles.iter().enumerate() {
        if !validate_cycle(g, c) {
            return Err(DecompositionViolation::InvalidCycle { index });
        }
        for (a, b) in c.edges() {
            let e = edge_index(n, a, b);
            if used.contains(e) {
                return Err(DecompositionViolation::DuplicatedEdge { index, edge: (a, b) });
            }
            used.insert(e);
        }
    }
    match g.edges().find(|&(a, b)| !used.contains(edge_index(n, a, b))) {
        Some(edge) => Err(DecompositionViolation::UncoveredEdge { edge }),
        None => Ok(()),
    }
}

/// Small named graphs used throughout the tests and docs.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("order in range");
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("order in range");
        for i in 0..n {
            g.set_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("order in range");
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
    }

    /// `u = 0` and `v = 1` adjacent to each other and to `2, 3, 4`; degrees (4, 4, 2, 2, 2).
    pub fn book3() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }
}
