//! Canonical forms for isomorph rejection on small graphs.
//!
//! The canonical string of a graph is the lexicographically smallest
//! upper-triangle adjacency bit string (column order, as in graph6) over all
//! labelings that respect the ordered partition obtained by equitable
//! refinement: cells are split by degree, then repeatedly by the number of
//! neighbours each vertex has in every cell. Remaining ties are resolved by
//! individualising vertices of the first non-trivial cell and backtracking.
//! The search prunes branches whose fixed prefix already exceeds the best
//! string, and skips children equivalent under automorphisms found so far.

use crate::graph::{pair_count, Graph};

/// Largest order accepted; the bit string must fit a `u128`.
pub const MAX_CANON_ORDER: usize = 16;

/// Ordered partition of the vertex set: `order` lists the vertices cell by
/// cell and `ends[c]` is one past the last position of cell `c`.
#[derive(Clone)]
struct Partition {
    order: Vec<usize>,
    ends: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition { order: (0..n).collect(), ends: vec![n] }
    }

    fn cell_range(&self, c: usize) -> std::ops::Range<usize> {
        let start = if c == 0 { 0 } else { self.ends[c - 1] };
        start..self.ends[c]
    }

    fn is_discrete(&self) -> bool {
        self.ends.len() == self.order.len()
    }

    /// Number of leading positions held by singleton cells.
    fn fixed_prefix(&self) -> usize {
        let mut start = 0;
        for &end in &self.ends {
            if end - start != 1 {
                return start;
            }
            start = end;
        }
        start
    }

    /// Splits every cell by neighbour counts into the current cells until stable.
    fn refine(&mut self, g: &Graph) {
        let n = self.order.len();
        let mut sig = vec![0u64; n];
        loop {
            let masks: Vec<u32> = (0..self.ends.len())
                .map(|c| self.order[self.cell_range(c)].iter().fold(0u32, |m, &v| m | 1 << v))
                .collect();
            // n <= 16: at most 16 cells and counts below 16, four bits each
            for v in 0..n {
                let row = g.neighbors(v);
                sig[v] = masks.iter().fold(0u64, |acc, &m| acc << 4 | (row & m).count_ones() as u64);
            }
            let mut new_ends = Vec::with_capacity(n);
            for c in 0..self.ends.len() {
                let range = self.cell_range(c);
                let cell = &mut self.order[range.clone()];
                if cell.len() > 1 {
                    cell.sort_by_key(|&v| (sig[v], v));
                    for k in 1..cell.len() {
                        if sig[cell[k]] != sig[cell[k - 1]] {
                            new_ends.push(range.start + k);
                        }
                    }
                }
                new_ends.push(range.end);
            }
            if new_ends.len() == self.ends.len() {
                return;
            }
            self.ends = new_ends;
        }
    }

    /// Moves `v` to the front of its cell and makes it a singleton.
    fn individualize(&self, cell: usize, v: usize) -> Partition {
        let mut p = self.clone();
        let range = p.cell_range(cell);
        let pos = p.order[range.clone()].iter().position(|&x| x == v).unwrap() + range.start;
        p.order.swap(range.start, pos);
        p.order[range.start + 1..range.end].sort_unstable();
        p.ends.insert(cell, range.start + 1);
        p
    }
}

/// Bit string of the first `q` positions of `order`, most significant first.
fn prefix_key(g: &Graph, order: &[usize], q: usize) -> u128 {
    let mut key = 0u128;
    for j in 1..q {
        let row = g.neighbors(order[j]);
        for &oi in &order[..j] {
            key = key << 1 | (row >> oi & 1) as u128;
        }
    }
    key
}

struct Search<'a> {
    g: &'a Graph,
    total_bits: usize,
    best: Option<(u128, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, part: Partition, path: &mut Vec<usize>) {
        let q = part.fixed_prefix();
        let prefix_bits = pair_count(q);
        if let Some((best, best_order)) = &self.best {
            if prefix_bits > 0 {
                let mine = prefix_key(self.g, &part.order, q);
                let theirs = best >> (self.total_bits - prefix_bits);
                if mine > theirs {
                    return;
                }
            }
            if part.is_discrete() {
                let key = prefix_key(self.g, &part.order, part.order.len());
                if key == *best {
                    let mut aut = vec![0; part.order.len()];
                    for (p, &v) in part.order.iter().enumerate() {
                        aut[v] = best_order[p];
                    }
                    self.automorphisms.push(aut);
                    return;
                }
                if key < *best {
                    self.best = Some((key, part.order.clone()));
                }
                return;
            }
        } else if part.is_discrete() {
            let key = prefix_key(self.g, &part.order, part.order.len());
            self.best = Some((key, part.order.clone()));
            return;
        }

        let cell = part.ends.iter().position(|&e| e > q).expect("partition is not discrete");
        let mut candidates: Vec<usize> = part.order[part.cell_range(cell)].to_vec();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for w in candidates {
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, path) {
                continue;
            }
            explored.push(w);
            let mut child = part.individualize(cell, w);
            child.refine(self.g);
            path.push(w);
            self.run(child, path);
            path.pop();
        }
    }

    /// Whether `w` shares an orbit with an explored vertex under the stored
    /// automorphisms that fix every vertex of `path`.
    fn equivalent_to_explored(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if path.iter().any(|&p| aut[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in aut.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// Canonical bit string as a number together with the vertex order that
/// realises it (`order[p]` is the vertex placed at position `p`).
pub(crate) fn canonical_key(g: &Graph) -> (u128, Vec<usize>) {
    let n = g.order();
    assert!(n <= MAX_CANON_ORDER, "canonical form supports at most {MAX_CANON_ORDER} vertices");
    let mut part = Partition::unit(n);
    part.refine(g);
    let mut search = Search { g, total_bits: pair_count(n), best: None, automorphisms: Vec::new() };
    search.run(part, &mut Vec::new());
    search.best.expect("search visits at least one leaf")
}

/// Byte string equal for two graphs exactly when they are isomorphic: the
/// order followed by the canonical adjacency bits packed most significant
/// bit first.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let (key, _) = canonical_key(g);
    key_bytes(g.order(), key)
}

pub(crate) fn key_bytes(n: usize, key: u128) -> Vec<u8> {
    let bits = pair_count(n);
    let nbytes = bits.div_ceil(8);
    let mut out = Vec::with_capacity(1 + nbytes);
    out.push(n as u8);
    let aligned = if bits == 0 { 0 } else { key << (128 - bits) };
    out.extend_from_slice(&aligned.to_be_bytes()[..nbytes]);
    out
}

/// Permutation sending each vertex to its canonical label.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let (_, order) = canonical_key(g);
    let mut label = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        label[v] = p;
    }
    label
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_key(a).0 == canonical_key(b).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn relabeled_pentagons_agree() {
        let c5 = named::cycle(5);
        let star = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c5), canonical_form(&star));
        assert_ne!(canonical_form(&named::complete(5)), canonical_form(&c5));
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        for g in [named::bowtie(), named::book3(), named::complete(6), named::path(7)] {
            let c = canonical_graph(&g);
            assert_eq!(canonical_graph(&c), c);
            assert_eq!(canonical_form(&c), canonical_form(&g));
        }
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        // K_12 has 12! labelings; automorphism pruning keeps this instant
        let k = named::complete(12);
        assert_eq!(canonical_graph(&k), k);
        let key = canonical_form(&Graph::empty(12).unwrap());
        assert_eq!(key[0], 12);
        assert!(key[1..].iter().all(|&b| b == 0));
    }

    #[test]
    fn tiny_orders() {
        assert_eq!(canonical_form(&Graph::empty(1).unwrap()), vec![1]);
        assert_eq!(canonical_form(&named::complete(2)), vec![2, 0x80]);
    }
}
