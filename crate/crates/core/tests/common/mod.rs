//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use hajos_core::generator::enumerate_nonisomorphic;
use hajos_core::graph::edge_index;
use hajos_core::Graph;
use itertools::Itertools;

/// Representatives of every class at order `n`.
pub fn classes(n: usize) -> Vec<Graph> {
    enumerate_nonisomorphic(n).unwrap().0
}

/// All classes for orders `3..=max`.
pub fn classes_up_to(max: usize) -> Vec<Graph> {
    (3..=max).flat_map(classes).collect()
}

/// Edge mask (bit = lexicographic edge index) of a vertex sequence read as a closed walk.
fn closed_walk_mask(n: usize, vs: &[usize]) -> u64 {
    (0..vs.len()).fold(0, |m, i| {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        m | 1 << edge_index(n, a.min(b), a.max(b))
    })
}

/// Every simple cycle of `g` as an edge mask, found by trying each vertex
/// subset in each cyclic order.
pub fn all_cycles(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let mut found = BTreeSet::new();
    for size in 3..=n {
        for subset in (0..n).combinations(size) {
            let first = subset[0];
            for rest in subset[1..].iter().copied().permutations(size - 1) {
                let mut vs = vec![first];
                vs.extend(rest);
                if (0..size).all(|i| g.has_edge(vs[i], vs[(i + 1) % size])) {
                    found.insert(closed_walk_mask(n, &vs));
                }
            }
        }
    }
    found.into_iter().collect()
}

pub fn edge_mask(g: &Graph) -> u64 {
    g.edges().fold(0, |m, (a, b)| m | 1 << edge_index(g.order(), a, b))
}

/// Fewest cycles partitioning the edges of `g`, minimising over every cycle
/// that fits in the remaining edges (no branching rule).
pub fn naive_min_cycles(g: &Graph) -> Option<usize> {
    fn best(mask: u64, cycles: &[u64], memo: &mut HashMap<u64, Option<usize>>) -> Option<usize> {
        if mask == 0 {
            return Some(0);
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = cycles.iter().filter(|&&c| c & mask == c).filter_map(|&c| best(mask & !c, cycles, memo)).min().map(|k| k + 1);
        memo.insert(mask, v);
        v
    }
    best(edge_mask(g), &all_cycles(g), &mut HashMap::new())
}

/// Every partition of the edges of `g` into at most `k` cycles, as sorted
/// lists of cycle masks.
pub fn all_partitions(g: &Graph, k: usize) -> Vec<Vec<u64>> {
    fn go(mask: u64, k: usize, cycles: &[u64], current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if mask == 0 {
            out.push(current.clone());
            return;
        }
        if k == 0 {
            return;
        }
        let low = mask & mask.wrapping_neg();
        for &c in cycles.iter().filter(|&&c| c & low != 0 && c & mask == c) {
            current.push(c);
            go(mask & !c, k - 1, cycles, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(edge_mask(g), k, &all_cycles(g), &mut Vec::new(), &mut out);
    out
}

/// Smallest upper-triangle bit string over all `n!` labelings.
pub fn brute_canonical(g: &Graph) -> u128 {
    let n = g.order();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let h = g.relabel(&perm);
            let mut key = 0u128;
            for j in 1..n {
                for i in 0..j {
                    key = key << 1 | h.has_edge(i, j) as u128;
                }
            }
            key
        })
        .min()
        .unwrap()
}

/// Vertex sets of the connected pieces of an edge mask.
pub fn mask_components(n: usize, mask: u64) -> Vec<u32> {
    let g = Graph::from_edges(n, &mask_edges(n, mask)).unwrap();
    let mut seen = 0u32;
    let mut out = Vec::new();
    for v in 0..n {
        if g.degree(v) > 0 && seen >> v & 1 == 0 {
            let c = g.component_of(v);
            seen |= c;
            out.push(c);
        }
    }
    out
}

pub fn mask_edges(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if mask >> edge_index(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Nonempty edge subsets of `g` in which every vertex has degree 0 or 2.
pub fn two_regular_subgraphs(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    for pick in 1u64..1 << edges.len() {
        let mut deg = [0u8; 32];
        let mut mask = 0u64;
        for (k, &(a, b)) in edges.iter().enumerate() {
            if pick >> k & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
                mask |= 1 << edge_index(n, a, b);
            }
        }
        if deg[..n].iter().all(|&d| d == 0 || d == 2) {
            out.push(mask);
        }
    }
    out
}
