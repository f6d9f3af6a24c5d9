//! Biconnected components (blocks) via Tarjan's low-link DFS with an edge stack.

use crate::graph::{edge_index, EdgeSet, Graph};

struct State<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<EdgeSet>,
}

impl State<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        for w in self.g.neighbor_iter(u) {
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                self.stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    self.pop_block(u, w);
                }
            } else if self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }

    fn pop_block(&mut self, u: usize, w: usize) {
        let n = self.g.order();
        let mut block = EdgeSet::empty(n);
        while let Some((a, b)) = self.stack.pop() {
            block.insert(edge_index(n, a, b));
            if (a, b) == (u, w) {
                break;
            }
        }
        self.blocks.push(block);
    }
}

/// Edge sets of the maximal biconnected subgraphs; together they partition
/// the edge set. Bridges form single-edge blocks. Blocks are returned in
/// ascending order of their lowest edge index.
pub fn biconnected_components(g: &Graph) -> Vec<EdgeSet> {
    let n = g.order();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == 0 && g.degree(v) > 0 {
            st.visit(v, None);
        }
    }
    let mut blocks = st.blocks;
    blocks.sort_by_key(|b| b.first());
    blocks
}

/// Vertices whose removal disconnects their component.
pub fn cut_vertices(g: &Graph) -> u32 {
    let mut seen_in = vec![0u32; g.order()];
    for block in biconnected_components(g) {
        let mut vs = 0u32;
        for (a, b) in block.pairs() {
            vs |= 1 << a | 1 << b;
        }
        for v in crate::graph::bits(vs) {
            seen_in[v] += 1;
        }
    }
    seen_in.iter().enumerate().filter(|(_, &c)| c > 1).fold(0, |acc, (v, _)| acc | 1 << v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn bowtie_splits_at_shared_vertex() {
        let blocks = biconnected_components(&named::bowtie());
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
        assert_eq!(cut_vertices(&named::bowtie()), 1);
    }

    #[test]
    fn complete_graph_is_one_block() {
        let blocks = biconnected_components(&named::complete(5));
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].len(), 10);
    }

    #[test]
    fn path_edges_are_bridges() {
        let blocks = biconnected_components(&named::path(3));
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 1));
        assert_eq!(cut_vertices(&named::path(3)), 0b010);
    }

    #[test]
    fn isolated_vertices_and_empty_graph() {
        assert!(biconnected_components(&Graph::empty(4).unwrap()).is_empty());
        let g = Graph::from_edges(6, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(biconnected_components(&g).len(), 1);
    }
}
