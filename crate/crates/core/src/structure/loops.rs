use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{scc_partition, EdgeIx, MultiGraph, Path, VertexIx};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Outcome of the condition (K) check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KReport {
    pub holds: bool,
    /// A vertex on exactly one simple loop, with that loop.
    pub witness: Option<(VertexIx, Path)>,
}

impl KReport {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|(v, p)| json!({
                "vertex": g.vertex_id(*v),
                "loop": p.ids(g),
            })),
        })
    }
}

/// Visits every simple loop (closed path with distinct vertices) once, rooted
/// at its smallest vertex. The visitor returns `false` to stop early.
/// Fails when more than `cap` loops would be visited.
pub fn simple_cycles(
    g: &MultiGraph,
    cap: usize,
    mut visit: impl FnMut(&Path) -> bool,
) -> Result<()> {
    let n = g.vertex_count();
    let scc = scc_partition(g);
    let mut count = 0usize;
    for s in g.vertices() {
        if !scc.on_loop(s) {
            continue;
        }
        // vertices >= s in s's component that can still return to s
        let allowed: Vec<bool> = {
            let mut back = vec![false; n];
            back[s.0] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &e in g.in_edges(u) {
                    let w = g.source(e);
                    if !back[w.0] && w > s && scc.same_class(w, s) {
                        back[w.0] = true;
                        stack.push(w);
                    }
                }
            }
            back
        };
        let mut on_path = vec![false; n];
        let mut path: Vec<EdgeIx> = Vec::new();
        // explicit DFS stack of (vertex, next out-edge position)
        let mut frames: Vec<(VertexIx, usize)> = vec![(s, 0)];
        on_path[s.0] = true;
        while let Some(frame) = frames.last_mut() {
            let (u, pos) = *frame;
            let outs = g.out_edges(u);
            if pos == outs.len() {
                frames.pop();
                on_path[u.0] = false;
                path.pop();
                continue;
            }
            frame.1 += 1;
            let e = outs[pos];
            let w = g.range(e);
            if w == s {
                count += 1;
                if count > cap {
                    return Err(Error::CycleCapExceeded { cap });
                }
                path.push(e);
                let keep_going = visit(&Path::new(s, path.clone()));
                path.pop();
                if !keep_going {
                    return Ok(());
                }
            } else if allowed[w.0] && !on_path[w.0] {
                on_path[w.0] = true;
                path.push(e);
                frames.push((w, 0));
            }
        }
    }
    Ok(())
}

/// Condition (K): no vertex lies on exactly one simple loop.
///
/// An edge record with the infinite marker on a simple loop stands for
/// infinitely many such loops.
pub fn condition_k(g: &MultiGraph, cap: usize) -> Result<KReport> {
    let n = g.vertex_count();
    let scc = scc_partition(g);
    let on_loop: Vec<bool> = g.vertices().map(|v| scc.on_loop(v)).collect();
    let mut pending = on_loop.iter().filter(|&&b| b).count();
    let mut count = vec![0u8; n];
    let mut first: Vec<Option<Path>> = vec![None; n];
    simple_cycles(g, cap, |p| {
        let weight = if p.edges.iter().any(|&e| g.edge(e).infinite) {
            2
        } else {
            1
        };
        for &e in &p.edges {
            let v = g.source(e);
            if count[v.0] < 2 {
                if first[v.0].is_none() {
                    first[v.0] = Some(p.clone());
                }
                count[v.0] = (count[v.0] + weight).min(2);
                if count[v.0] == 2 {
                    pending -= 1;
                }
            }
        }
        pending > 0
    })?;
    let witness = g
        .vertices()
        .find(|v| on_loop[v.0] && count[v.0] == 1)
        .map(|v| {
            let p = first[v.0].take().expect("recorded with the count");
            (v, rotate_to(g, &p, v))
        });
    Ok(KReport {
        holds: witness.is_none(),
        witness,
    })
}

/// The same loop read from vertex `v`.
fn rotate_to(g: &MultiGraph, p: &Path, v: VertexIx) -> Path {
    let i = p
        .edges
        .iter()
        .position(|&e| g.source(e) == v)
        .expect("vertex lies on the loop");
    let mut edges = p.edges[i..].to_vec();
    edges.extend_from_slice(&p.edges[..i]);
    Path::new(v, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn c3_fails_at_v1() {
        let g = parse_graph(
            "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v1\n",
        )
        .unwrap();
        let k = condition_k(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert!(!k.holds);
        let (v, p) = k.witness.unwrap();
        assert_eq!(g.vertex_id(v), "v1");
        assert_eq!(p.ids(&g), ["e1", "e2", "e3"]);
    }

    #[test]
    fn figure_eight_holds() {
        let g = parse_graph("vertex v\nedge e v v\nedge f v v\n").unwrap();
        assert!(condition_k(&g, DEFAULT_CYCLE_CAP).unwrap().holds);
    }

    #[test]
    fn acyclic_holds_vacuously() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w\n").unwrap();
        assert!(condition_k(&g, DEFAULT_CYCLE_CAP).unwrap().holds);
    }

    #[test]
    fn infinite_loop_edge_counts_twice() {
        let g = parse_graph("vertex v\nedge e v v inf\n").unwrap();
        assert!(condition_k(&g, DEFAULT_CYCLE_CAP).unwrap().holds);
    }

    #[test]
    fn cap_is_enforced() {
        let g = parse_graph("vertex v\nedge e v v 5\n").unwrap();
        let mut seen = 0;
        simple_cycles(&g, 10, |_| {
            seen += 1;
            true
        })
        .unwrap();
        assert_eq!(seen, 5);
        assert_eq!(
            simple_cycles(&g, 3, |_| true),
            Err(Error::CycleCapExceeded { cap: 3 })
        );
    }

    #[test]
    fn cycles_of_p23() {
        let g = parse_graph(
            "vertex v\nvertex a\nvertex b\nvertex c\n\
             edge x v a\nedge y a v\nedge p v b\nedge q b c\nedge s c v\n",
        )
        .unwrap();
        let mut lens = Vec::new();
        simple_cycles(&g, 100, |p| {
            lens.push(p.len());
            true
        })
        .unwrap();
        lens.sort();
        assert_eq!(lens, [2, 3]);
    }
}
