//! Complete backtracking search for decompositions into at most `k` cycles.
//!
//! Every decomposition has a cycle through the lowest-indexed remaining
//! edge, so the search branches over exactly those cycles, removes the
//! chosen one and recurses. A branch is dropped when some vertex needs more
//! cycles than remain (`deg(v) / 2` cycles pass through `v`).

use crate::cancel::CancelToken;
use crate::graph::{Cycle, Decomposition, Graph};

#[derive(Debug, Clone, Default)]
pub struct SearchBudget {
    pub k: usize,
    pub node_limit: Option<u64>,
    pub cancel: CancelToken,
}

impl SearchBudget {
    pub fn new(k: usize) -> Self {
        SearchBudget { k, ..Default::default() }
    }

    pub fn with_cancel(k: usize, cancel: CancelToken) -> Self {
        SearchBudget { k, node_limit: None, cancel }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactStatus {
    Feasible(Decomposition),
    Infeasible,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub status: ExactStatus,
    pub nodes_explored: u64,
}

/// Largest `deg(v) / 2`; no decomposition of an even graph has fewer cycles.
pub fn lower_bound(g: &Graph) -> usize {
    g.max_degree() / 2
}

/// Lazy depth-first enumeration of the simple cycles through edge `(a, b)`.
/// Paths start `a, b` and grow by ascending neighbour index; each path whose
/// last vertex is adjacent to `a` yields a cycle.
pub struct CyclesThroughEdge<'a> {
    g: &'a Graph,
    a: usize,
    path: Vec<usize>,
    on_path: u32,
    /// Untried extensions of `path[k + 1]` at index `k`.
    pending: Vec<u32>,
}

impl Iterator for CyclesThroughEdge<'_> {
    type Item = Cycle;

    fn next(&mut self) -> Option<Cycle> {
        loop {
            let top = self.pending.last_mut()?;
            if *top == 0 {
                self.pending.pop();
                if self.pending.is_empty() {
                    return None;
                }
                let v = self.path.pop().unwrap();
                self.on_path &= !(1 << v);
                continue;
            }
            let w = top.trailing_zeros() as usize;
            *top &= *top - 1;
            self.path.push(w);
            self.on_path |= 1 << w;
            self.pending.push(self.g.neighbors(w) & !self.on_path);
            if self.g.has_edge(w, self.a) {
                return Some(Cycle::new(self.path.clone()));
            }
        }
    }
}

/// Every simple cycle of `g` containing edge `(a, b)`, each exactly once.
pub fn cycles_through_edge(g: &Graph, (a, b): (usize, usize)) -> CyclesThroughEdge<'_> {
    assert!(g.has_edge(a, b), "({a}, {b}) is not an edge");
    let on_path = 1 << a | 1 << b;
    CyclesThroughEdge { g, a, path: vec![a, b], on_path, pending: vec![g.neighbors(b) & !on_path] }
}

struct Search {
    node_limit: Option<u64>,
    cancel: CancelToken,
    prune: bool,
    nodes: u64,
    stack: Vec<Cycle>,
}

impl Search {
    /// `Some(true)` when a decomposition was completed on `stack`.
    fn run(&mut self, g: &Graph, k: usize) -> Option<bool> {
        self.nodes += 1;
        if self.cancel.is_cancelled() || self.node_limit.is_some_and(|l| self.nodes > l) {
            return None;
        }
        let Some(e) = g.edges().next() else {
            return Some(true);
        };
        if k == 0 || (self.prune && lower_bound(g) > k) {
            return Some(false);
        }
        for c in cycles_through_edge(g, e) {
            let rest = g.remove_cycle(&c).expect("enumerated cycles lie in the graph");
            self.stack.push(c);
            if self.run(&rest, k - 1)? {
                return Some(true);
            }
            self.stack.pop();
        }
        Some(false)
    }
}

/// Whether `g` decomposes into at most `budget.k` cycles.
pub fn decide(g: &Graph, budget: &SearchBudget) -> ExactResult {
    decide_with_pruning(g, budget, true)
}

/// [`decide`] with the degree bound optionally switched off.
pub fn decide_with_pruning(g: &Graph, budget: &SearchBudget, prune: bool) -> ExactResult {
    let mut search =
        Search { node_limit: budget.node_limit, cancel: budget.cancel.clone(), prune, nodes: 0, stack: Vec::new() };
    let status = match search.run(g, budget.k) {
        Some(true) => ExactStatus::Feasible(Decomposition::new(g.order(), std::mem::take(&mut search.stack))),
        Some(false) => ExactStatus::Infeasible,
        None => ExactStatus::Aborted,
    };
    ExactResult { status, nodes_explored: search.nodes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MinCyclesError {
    #[error("search aborted at k = {0}")]
    Aborted(usize),
    #[error("graph has no cycle decomposition")]
    NoDecomposition,
}

/// Fewest cycles in a decomposition of `g`, searching upwards from
/// [`lower_bound`].
pub fn min_cycles(g: &Graph, cancel: &CancelToken) -> Result<usize, MinCyclesError> {
    if !g.is_even() {
        return Err(MinCyclesError::NoDecomposition);
    }
    // every cycle takes at least three edges
    for k in lower_bound(g)..=g.size() / 3 {
        match decide(g, &SearchBudget::with_cancel(k, cancel.clone())).status {
            ExactStatus::Feasible(_) => return Ok(k),
            ExactStatus::Infeasible => {}
            ExactStatus::Aborted => return Err(MinCyclesError::Aborted(k)),
        }
    }
    Err(MinCyclesError::NoDecomposition)
}
