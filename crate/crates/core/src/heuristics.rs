//! Randomized cycle-finding heuristics and the block-wise decomposition loop.
//!
//! Walks are vertex paths: each step moves from the head to a random
//! neighbour other than its predecessor, and a cycle closes when that
//! neighbour already lies on the path. All randomness comes from
//! [`RngStream`], a seeded ChaCha8 generator, so runs are reproducible.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biconnected::biconnected_components;
use crate::cancel::CancelToken;
use crate::flow::{join_paths, two_vertex_disjoint_paths};
use crate::graph::{bits, hajos_bound, Cycle, Decomposition, Graph};

/// Attempts made by [`rlc_repeat`] unless told otherwise.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not even")]
    NotEven,
    #[error("vertex {0} has no incident edge")]
    IsolatedStart(usize),
    #[error("pair ({0}, {1}) is not two distinct vertices of the graph")]
    BadPair(usize, usize),
    #[error("walk stranded at vertex {0}")]
    Stranded(usize),
    #[error("no two internally disjoint paths between {0} and {1}")]
    NoDisjointPaths(usize, usize),
}

/// Seeded ChaCha8 stream. Equal seeds give equal decision sequences on every
/// platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

/// SplitMix64 finaliser, used to derive independent substream seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh stream whose seed depends only on this seed and `tag`.
    pub fn substream(&self, tag: u64) -> RngStream {
        RngStream::new(mix64(self.seed ^ mix64(tag)))
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// Uniformly chosen member of a nonempty vertex mask.
    pub fn pick(&mut self, mask: u32) -> usize {
        debug_assert!(mask != 0);
        let k = self.below(mask.count_ones() as usize);
        bits(mask).nth(k).expect("k is below the population count")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    Rc,
    Rlc,
    Ld,
    Hdf,
}

impl Strategy {
    /// Stage order used by the pipeline.
    pub const ALL: [Strategy; 4] = [Strategy::Rc, Strategy::Rlc, Strategy::Ld, Strategy::Hdf];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Rc => "RC",
            Strategy::Rlc => "RLC",
            Strategy::Ld => "LD",
            Strategy::Hdf => "HDF",
        }
    }

    pub fn find_cycle(self, g: &Graph, rng: &mut RngStream) -> Result<Cycle, HeuristicError> {
        match self {
            Strategy::Rc => random_cycle(g, rng, None),
            Strategy::Rlc => random_long_cycle(g, rng, None),
            Strategy::Ld => longest_distance_cycle(g, rng, None),
            Strategy::Hdf => hdf_cycle(g, rng),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

fn start_vertex(g: &Graph, rng: &mut RngStream, start: Option<usize>) -> Result<usize, HeuristicError> {
    let support = g.support();
    if support == 0 {
        return Err(HeuristicError::NoEdges);
    }
    match start {
        Some(v) if v >= g.order() || support >> v & 1 == 0 => Err(HeuristicError::IsolatedStart(v)),
        Some(v) => Ok(v),
        None => Ok(rng.pick(support)),
    }
}

/// Current walk: the vertex path, its vertex mask and each vertex's position.
struct Walk {
    path: Vec<usize>,
    on_path: u32,
    pos: [usize; 32],
}

impl Walk {
    fn new(start: usize) -> Self {
        let mut pos = [usize::MAX; 32];
        pos[start] = 0;
        Walk { path: vec![start], on_path: 1 << start, pos }
    }

    fn head(&self) -> usize {
        *self.path.last().unwrap()
    }

    /// Neighbours of the head other than its predecessor.
    fn candidates(&self, g: &Graph) -> u32 {
        let mut c = g.neighbors(self.head());
        if self.path.len() >= 2 {
            c &= !(1 << self.path[self.path.len() - 2]);
        }
        c
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.path.len();
        self.path.push(v);
        self.on_path |= 1 << v;
    }

    fn segment(&self, from: usize, to: usize) -> Cycle {
        Cycle::new(self.path[from..=to].to_vec())
    }
}

/// Random walk that stops at the first closed cycle.
pub fn random_cycle(g: &Graph, rng: &mut RngStream, start: Option<usize>) -> Result<Cycle, HeuristicError> {
    let mut walk = Walk::new(start_vertex(g, rng, start)?);
    loop {
        let cand = walk.candidates(g);
        if cand == 0 {
            return Err(HeuristicError::Stranded(walk.head()));
        }
        let w = rng.pick(cand);
        if walk.on_path >> w & 1 == 1 {
            return Ok(walk.segment(walk.pos[w], walk.path.len() - 1));
        }
        walk.push(w);
    }
}

/// A cycle seen by [`random_long_cycle_traced`]: path positions of its first
/// vertex and of the head at the time it was closable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosableCycle {
    pub from: usize,
    pub head: usize,
}

impl ClosableCycle {
    pub fn cycle_len(&self) -> usize {
        self.head - self.from + 1
    }
}

/// Random walk that records every closable cycle and keeps extending the
/// path while the head has an unvisited neighbour; returns the longest
/// recorded cycle.
pub fn random_long_cycle(g: &Graph, rng: &mut RngStream, start: Option<usize>) -> Result<Cycle, HeuristicError> {
    random_long_cycle_traced(g, rng, start).map(|(c, _)| c)
}

/// [`random_long_cycle`] together with every cycle recorded on the walk, in
/// the order seen. Ties for the longest go to the earliest record.
pub fn random_long_cycle_traced(
    g: &Graph,
    rng: &mut RngStream,
    start: Option<usize>,
) -> Result<(Cycle, Vec<ClosableCycle>), HeuristicError> {
    let mut walk = Walk::new(start_vertex(g, rng, start)?);
    let mut seen = Vec::new();
    loop {
        let cand = walk.candidates(g);
        if cand == 0 {
            return Err(HeuristicError::Stranded(walk.head()));
        }
        let head = walk.path.len() - 1;
        for w in bits(cand & walk.on_path) {
            seen.push(ClosableCycle { from: walk.pos[w], head });
        }
        let free = cand & !walk.on_path;
        if free == 0 {
            break;
        }
        walk.push(rng.pick(free));
    }
    let best = seen.iter().copied().reduce(|a, b| if b.cycle_len() > a.cycle_len() { b } else { a }).expect("a closed walk records a cycle");
    Ok((walk.segment(best.from, best.head), seen))
}

/// Cycle through two vertices at maximum distance, built from two internally
/// disjoint paths. Without an explicit pair, one is drawn uniformly among the
/// pairs attaining the maximum distance.
pub fn longest_distance_cycle(
    g: &Graph,
    rng: &mut RngStream,
    pair: Option<(usize, usize)>,
) -> Result<Cycle, HeuristicError> {
    let (u, v) = match pair {
        Some((u, v)) => {
            if u == v || u >= g.order() || v >= g.order() {
                return Err(HeuristicError::BadPair(u, v));
            }
            (u, v)
        }
        None => {
            let support = g.support();
            if support == 0 {
                return Err(HeuristicError::NoEdges);
            }
            let mut best = 0;
            let mut pairs = Vec::new();
            for u in bits(support) {
                let dist = g.bfs_distances(u);
                for v in bits(support).filter(|&v| v > u) {
                    let Some(d) = dist[v] else { continue };
                    if d > best {
                        best = d;
                        pairs.clear();
                    }
                    if d == best {
                        pairs.push((u, v));
                    }
                }
            }
            pairs[rng.below(pairs.len())]
        }
    };
    let (a, b) = two_vertex_disjoint_paths(g, u, v).ok_or(HeuristicError::NoDisjointPaths(u, v))?;
    Ok(join_paths(&a, &b))
}

/// Dispatch on the vertices of maximum degree: one such vertex starts a long
/// cycle walk, exactly two are joined by disjoint paths, otherwise a long
/// cycle walk starts at a random one of them.
pub fn hdf_cycle(g: &Graph, rng: &mut RngStream) -> Result<Cycle, HeuristicError> {
    let top = g.max_degree();
    if top == 0 {
        return Err(HeuristicError::NoEdges);
    }
    let maxima = (0..g.order()).filter(|&v| g.degree(v) == top).fold(0u32, |m, v| m | 1 << v);
    match maxima.count_ones() {
        1 => random_long_cycle(g, rng, Some(maxima.trailing_zeros() as usize)),
        2 => {
            let u = maxima.trailing_zeros() as usize;
            let v = 31 - maxima.leading_zeros() as usize;
            longest_distance_cycle(g, rng, Some((u, v)))
        }
        _ => {
            let start = rng.pick(maxima);
            random_long_cycle(g, rng, Some(start))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicOutcome {
    pub strategy: Strategy,
    pub decomposition: Decomposition,
    pub cycles_used: usize,
    pub within_bound: bool,
}

/// Peels cycles off `g` until no edge is left. Each round splits the
/// remaining graph into blocks and removes one strategy cycle from every
/// block, largest block first (ties by lowest edge index).
pub fn decompose(g: &Graph, strategy: Strategy, rng: &mut RngStream) -> Result<HeuristicOutcome, HeuristicError> {
    if !g.is_even() {
        return Err(HeuristicError::NotEven);
    }
    if g.size() == 0 {
        return Err(HeuristicError::NoEdges);
    }
    let mut current = *g;
    let mut cycles = Vec::new();
    while current.size() > 0 {
        let mut blocks = biconnected_components(&current);
        // stable sort keeps the lowest-edge order among equal sizes
        blocks.sort_by_key(|b| std::cmp::Reverse(b.len()));
        for block in blocks {
            let part = current.restrict_to(&block);
            let cycle = strategy.find_cycle(&part, rng)?;
            current = current.remove_cycle(&cycle).expect("cycle of a block is a cycle of the graph");
            cycles.push(cycle);
        }
    }
    let cycles_used = cycles.len();
    Ok(HeuristicOutcome {
        strategy,
        decomposition: Decomposition::new(g.order(), cycles),
        cycles_used,
        within_bound: cycles_used <= hajos_bound(g.order()),
    })
}

/// Repeats the long-cycle decomposition until one meets the bound, the
/// attempts run out, or `cancel` fires (checked before every attempt).
pub fn rlc_repeat(g: &Graph, rng: &mut RngStream, cancel: &CancelToken, max_attempts: u64) -> Option<Decomposition> {
    for _ in 0..max_attempts {
        if cancel.is_cancelled() {
            return None;
        }
        let outcome = decompose(g, Strategy::Rlc, rng).ok()?;
        if outcome.within_bound {
            return Some(outcome.decomposition);
        }
    }
    None
}
