use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Diagram;

/// An induced cycle `v_0, v_1, ..., v_{k-1}` of the underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    /// All arrows point the same way around the cycle.
    pub oriented: bool,
}

impl Cycle {
    /// Consecutive vertex pairs, closing back to the start.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |t| (self.vertices[t], self.vertices[(t + 1) % k]))
    }
}

fn is_oriented(d: &Diagram, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let forward = (0..k).all(|t| d.has_arrow(cycle[t], cycle[(t + 1) % k]));
    let backward = (0..k).all(|t| d.has_arrow(cycle[(t + 1) % k], cycle[t]));
    forward || backward
}

/// All chordless cycles, each listed once starting from its smallest vertex.
pub(super) fn induced_cycles(d: &Diagram) -> Vec<Cycle> {
    let n = d.size();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| d.neighbors(v).collect()).collect();
    let mut out = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        extend(d, &adj, s, &mut path, &mut out);
    }
    out
}

fn extend(d: &Diagram, adj: &[Vec<usize>], s: usize, path: &mut Vec<usize>, out: &mut Vec<Cycle>) {
    let last = *path.last().unwrap();
    for &w in &adj[last] {
        if w <= s || path.contains(&w) {
            continue;
        }
        // w may touch only the last vertex and, when closing, the start
        let chord = path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| d.adjacent(p, w));
        if chord {
            continue;
        }
        if path.len() >= 2 && d.adjacent(s, w) {
            // w closes the cycle next; only continue to that closure
            path.push(w);
            if path[1] < w {
                out.push(Cycle {
                    oriented: is_oriented(d, path),
                    vertices: path.clone(),
                });
            }
            path.pop();
            continue;
        }
        path.push(w);
        extend(d, adj, s, path, out);
        path.pop();
    }
}

/// One cycle per non-tree edge of a breadth-first spanning forest.
pub(super) fn fundamental_cycles(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.size();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut tree = vec![false; n * n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in d.neighbors(v).collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    tree[v * n + w] = true;
                    tree[w * n + v] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !d.adjacent(i, j) || tree[i * n + j] {
                continue;
            }
            let (mut a, mut b) = (i, j);
            let mut up = vec![a];
            let mut down = vec![b];
            while a != b {
                if depth[a] >= depth[b] {
                    a = parent[a];
                    up.push(a);
                } else {
                    b = parent[b];
                    down.push(b);
                }
            }
            down.pop();
            up.extend(down.into_iter().rev());
            out.push(up);
        }
    }
    out
}
