//! Vertex-disjoint X-Y paths by unit-capacity maximum flow.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexSet};

struct Arc {
    to: usize,
    cap: u32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let to = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[to] {
                    seen[to] = true;
                    via[to] = a;
                    if to == sink {
                        let mut v = sink;
                        while v != source {
                            let a = via[v];
                            self.arcs[a].cap -= 1;
                            self.arcs[a ^ 1].cap += 1;
                            v = self.arcs[a ^ 1].to;
                        }
                        return true;
                    }
                    queue.push_back(to);
                }
            }
        }
        false
    }
}

/// Maximum number of pairwise vertex-disjoint X-Y paths, with one such
/// collection. A vertex of `x ∩ y` counts as a path on its own.
pub fn menger_paths(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<Vec<Vec<Vertex>>> {
    g.check_set(x)?;
    g.check_set(y)?;
    let n = g.vertex_count();
    let (source, sink) = (2 * n, 2 * n + 1);
    let inn = |v: Vertex| 2 * v;
    let out = |v: Vertex| 2 * v + 1;
    let mut net = Network::new(2 * n + 2);
    for v in g.vertices() {
        net.add(inn(v), out(v), 1);
    }
    for &(u, v) in g.edges() {
        net.add(out(u), inn(v), 1);
        net.add(out(v), inn(u), 1);
    }
    for v in x.iter() {
        net.add(source, inn(v), 1);
    }
    for v in y.iter() {
        net.add(out(v), sink, 1);
    }
    while net.augment(source, sink) {}

    // follow saturated forward arcs from the source
    let mut paths = Vec::new();
    for &a in &net.out[source] {
        if a % 2 != 0 || net.arcs[a].cap != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut node = net.arcs[a].to;
        loop {
            let v = node / 2;
            path.push(v);
            let next = net.out[out(v)]
                .iter()
                .copied()
                .find(|&b| b % 2 == 0 && net.arcs[b].cap == 0)
                .expect("flow leaves every saturated vertex");
            let to = net.arcs[next].to;
            if to == sink {
                break;
            }
            node = to;
        }
        paths.push(path);
    }
    paths.sort();
    Ok(paths)
}

pub fn menger_packing(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    Ok(menger_paths(g, x, y)?.len())
}
