//! Internally vertex-disjoint paths by unit-capacity maximum flow on the
//! vertex-split network.
//!
//! Vertex `x` becomes an arc `in(x) -> out(x)` of capacity one; every edge
//! `{a, b}` becomes arcs `out(a) -> in(b)` and `out(b) -> in(a)` of capacity
//! one. Flow leaves `out(u)` and enters `in(v)`, so the endpoints themselves
//! carry no capacity limit.

use std::collections::VecDeque;

use crate::graph::{Cycle, Graph};

#[inline]
fn vin(x: usize) -> usize {
    2 * x
}

#[inline]
fn vout(x: usize) -> usize {
    2 * x + 1
}

struct Network {
    size: usize,
    cap: Vec<i8>,
    flow: Vec<i8>,
}

impl Network {
    fn new(size: usize) -> Self {
        Network { size, cap: vec![0; size * size], flow: vec![0; size * size] }
    }

    fn residual(&self, a: usize, b: usize) -> i8 {
        self.cap[a * self.size + b] - self.flow[a * self.size + b]
    }

    fn push(&mut self, a: usize, b: usize) {
        self.flow[a * self.size + b] += 1;
        self.flow[b * self.size + a] -= 1;
    }

    /// One BFS augmenting path of value one; false when none exists.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut pred = vec![usize::MAX; self.size];
        pred[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..self.size {
                if pred[b] == usize::MAX && self.residual(a, b) > 0 {
                    pred[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if pred[sink] == usize::MAX {
            return false;
        }
        let mut b = sink;
        while b != source {
            let a = pred[b];
            self.push(a, b);
            b = a;
        }
        true
    }
}

/// Two `u`–`v` paths sharing only their endpoints, or `None` when the maximum
/// flow between `u` and `v` in the split network is below two.
pub fn two_vertex_disjoint_paths(g: &Graph, u: usize, v: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    assert_ne!(u, v, "endpoints must differ");
    let n = g.order();
    let mut net = Network::new(2 * n);
    for x in 0..n {
        if x != u && x != v {
            net.cap[vin(x) * net.size + vout(x)] = 1;
        }
    }
    for (a, b) in g.edges() {
        net.cap[vout(a) * net.size + vin(b)] = 1;
        net.cap[vout(b) * net.size + vin(a)] = 1;
    }
    let (source, sink) = (vout(u), vin(v));
    for _ in 0..2 {
        if !net.augment(source, sink) {
            return None;
        }
    }
    // peel the two unit paths off the flow
    let mut paths = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut path = vec![u];
        let mut x = u;
        while x != v {
            let y = (0..n)
                .find(|&y| net.flow[vout(x) * net.size + vin(y)] > 0)
                .expect("flow conservation at an internal vertex");
            net.flow[vout(x) * net.size + vin(y)] = 0;
            path.push(y);
            x = y;
        }
        paths.push(path);
    }
    let second = paths.pop().unwrap();
    let first = paths.pop().unwrap();
    Some((first, second))
}

/// The cycle formed by two internally disjoint `u`–`v` paths.
pub fn join_paths(first: &[usize], second: &[usize]) -> Cycle {
    let mut vs = first.to_vec();
    vs.extend(second[1..second.len() - 1].iter().rev());
    Cycle::new(vs)
}
