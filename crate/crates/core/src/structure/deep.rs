use std::collections::VecDeque;

use crate::graph::{MultiGraph, Path, VertexIx};

/// Directed distance from `v` to every vertex, `None` when unreachable.
fn distances(g: &MultiGraph, v: VertexIx) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[v.0] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.0].unwrap();
        for w in g.successors(u) {
            if dist[w.0].is_none() {
                dist[w.0] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `V(i) \ V(i-1)` for `i = 0, 1, ...` until exhausted, where `V(i)` is the set
/// of vertices at distance at most `i` from `v`.
pub fn distance_layers(g: &MultiGraph, v: VertexIx) -> Vec<Vec<VertexIx>> {
    let mut layers: Vec<Vec<VertexIx>> = Vec::new();
    for (i, d) in distances(g, v).into_iter().enumerate() {
        if let Some(d) = d {
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            layers[d].push(VertexIx(i));
        }
    }
    layers
}

/// Paths of length `n` from `v` whose `i`-th prefix ends in `V(i) \ V(i-1)`:
/// every prefix is a shortest path.
pub fn deep_paths(g: &MultiGraph, v: VertexIx, n: usize) -> Vec<Path> {
    let dist = distances(g, v);
    let mut out = Vec::new();
    let mut stack = vec![Path::new(v, Vec::new())];
    while let Some(p) = stack.pop() {
        if p.len() == n {
            out.push(p);
            continue;
        }
        let at = p.range(g);
        for &e in g.out_edges(at).iter().rev() {
            if dist[g.range(e).0] == Some(p.len() + 1) {
                let mut edges = p.edges.clone();
                edges.push(e);
                stack.push(Path::new(v, edges));
            }
        }
    }
    out
}
