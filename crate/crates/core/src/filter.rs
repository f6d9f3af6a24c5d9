//! Necessary conditions for a minimum counterexample.
//!
//! A minimum counterexample is biconnected and satisfies the seven structural
//! criteria below. A graph that violates any of them needs no further work at
//! its order. The criteria are checked in ascending order and the first
//! violation is the one reported.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};

/// One of the seven minimum-counterexample criteria, numbered (i)–(vii).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
}

impl Criterion {
    pub const ALL: [Criterion; 7] =
        [Criterion::I, Criterion::Ii, Criterion::Iii, Criterion::Iv, Criterion::V, Criterion::Vi, Criterion::Vii];

    /// 1-based index.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(index: usize) -> Option<Criterion> {
        Self::ALL.get(index.checked_sub(1)?).copied()
    }

    pub fn roman(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii"][self as usize]
    }

    pub fn check(self, g: &Graph) -> bool {
        match self {
            Criterion::I => criterion_i(g),
            Criterion::Ii => criterion_ii(g),
            Criterion::Iii => criterion_iii(g),
            Criterion::Iv => criterion_iv(g),
            Criterion::V => criterion_v(g),
            Criterion::Vi => criterion_vi(g),
            Criterion::Vii => criterion_vii(g),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

fn vertices_of_degree(g: &Graph, d: usize) -> impl Iterator<Item = usize> + '_ {
    (0..g.order()).filter(move |&v| g.degree(v) == d)
}

fn is_independent(g: &Graph, set: u32) -> bool {
    bits(set).all(|v| g.neighbors(v) & set == 0)
}

/// Adjacent pairs `u < v` of degree-6 vertices with their common neighbourhood.
fn adjacent_degree6_pairs(g: &Graph) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
    g.edges()
        .filter(|&(u, v)| g.degree(u) == 6 && g.degree(v) == 6)
        .map(|(u, v)| (u, v, g.neighbors(u) & g.neighbors(v)))
}

/// At most one vertex has degree 2 or 4.
pub fn criterion_i(g: &Graph) -> bool {
    (0..g.order()).filter(|&v| matches!(g.degree(v), 2 | 4)).count() <= 1
}

/// The two neighbours of every degree-2 vertex are adjacent.
pub fn criterion_ii(g: &Graph) -> bool {
    vertices_of_degree(g, 2).all(|v| {
        let mut nb = bits(g.neighbors(v));
        let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
        g.has_edge(a, b)
    })
}

/// The neighbourhood of every degree-4 vertex induces a regular graph.
pub fn criterion_iii(g: &Graph) -> bool {
    vertices_of_degree(g, 4).all(|v| {
        let nb = g.neighbors(v);
        let mut degs = bits(nb).map(|x| (g.neighbors(x) & nb).count_ones());
        let first = degs.next().unwrap();
        degs.all(|d| d == first)
    })
}

/// For every degree-6 vertex, whenever four of its neighbours form a clique
/// the remaining two are adjacent.
pub fn criterion_iv(g: &Graph) -> bool {
    vertices_of_degree(g, 6).all(|v| {
        let nb: Vec<usize> = bits(g.neighbors(v)).collect();
        // each 4-subset is the complement of a pair of left-out neighbours
        (0..6).all(|a| {
            (a + 1..6).all(|b| {
                let quad = nb.iter().enumerate().filter(|&(k, _)| k != a && k != b).map(|(_, &x)| x);
                let clique = quad.clone().fold(0u32, |m, x| m | 1 << x);
                let is_clique = quad.into_iter().all(|x| g.neighbors(x) & clique == clique & !(1 << x));
                !is_clique || g.has_edge(nb[a], nb[b])
            })
        })
    })
}

/// Adjacent degree-6 vertices with five common neighbours have an
/// independent common neighbourhood.
pub fn criterion_v(g: &Graph) -> bool {
    adjacent_degree6_pairs(g).filter(|&(_, _, common)| common.count_ones() == 5).all(|(_, _, common)| is_independent(g, common))
}

/// Adjacent degree-6 vertices `u, v` with five common neighbours: no vertex
/// outside `{u, v}` has three or more neighbours among the common ones.
pub fn criterion_vi(g: &Graph) -> bool {
    adjacent_degree6_pairs(g).filter(|&(_, _, common)| common.count_ones() == 5).all(|(u, v, common)| {
        (0..g.order()).filter(|&w| w != u && w != v).all(|w| (g.neighbors(w) & common).count_ones() < 3)
    })
}

/// Adjacent degree-6 vertices `u, v` with four common neighbours and private
/// neighbours `x_u`, `x_v`: if `x_u` reaches `x_v` once `u`, `v` and the common
/// neighbours are deleted, the common neighbourhood is independent.
pub fn criterion_vii(g: &Graph) -> bool {
    adjacent_degree6_pairs(g).filter(|&(_, _, common)| common.count_ones() == 4).all(|(u, v, common)| {
        let private_u = g.neighbors(u) & !g.neighbors(v) & !(1 << v);
        let private_v = g.neighbors(v) & !g.neighbors(u) & !(1 << u);
        debug_assert_eq!(private_u.count_ones(), 1);
        debug_assert_eq!(private_v.count_ones(), 1);
        let (xu, xv) = (private_u.trailing_zeros() as usize, private_v.trailing_zeros() as usize);
        let allowed = g.vertex_mask() & !(1 << u | 1 << v | common);
        let connected = g.reach_within(xu, allowed) >> xv & 1 == 1;
        !connected || is_independent(g, common)
    })
}

/// Outcome of checking a graph against the minimum-counterexample conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub biconnected: bool,
    /// `satisfied[k]` holds for criterion `k + 1`.
    pub satisfied: [bool; 7],
    pub first_violated: Option<Criterion>,
}

impl FilterVerdict {
    /// The graph could be a minimum counterexample.
    pub fn passed(&self) -> bool {
        self.biconnected && self.first_violated.is_none()
    }
}

/// Checks biconnectivity, then criteria (i) to (vii). For graphs that are not
/// biconnected the criteria are not evaluated and `satisfied` stays all-true.
pub fn apply_filter(g: &Graph) -> FilterVerdict {
    if !g.is_biconnected() {
        return FilterVerdict { biconnected: false, satisfied: [true; 7], first_violated: None };
    }
    let satisfied = Criterion::ALL.map(|c| c.check(g));
    let first_violated = Criterion::ALL.into_iter().find(|c| !satisfied[*c as usize]);
    FilterVerdict { biconnected: true, satisfied, first_violated }
}
