//! Isomorphism search between small coloured multigraphs.
//!
//! Colours restrict which vertices and edges may correspond; passing the
//! projections to a common base graph as colours finds isomorphisms that
//! commute with the projections.

use std::collections::HashMap;

use crate::graph::{EdgeIx, GraphMorphism, MultiGraph, VertexIx};

/// Vertex and edge colours for one side of the search.
#[derive(Debug, Clone)]
pub struct Colouring {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl Colouring {
    pub fn uniform(g: &MultiGraph) -> Self {
        Self {
            vertex: vec![0; g.vertex_count()],
            edge: vec![0; g.edge_count()],
        }
    }

    /// Colours given by a morphism to a base graph.
    pub fn from_morphism(g: &MultiGraph, p: &GraphMorphism) -> Self {
        Self {
            vertex: g.vertices().map(|v| p.vertex(v).0).collect(),
            edge: g.edges().map(|e| p.edge(e).0).collect(),
        }
    }
}

type EdgeKey = (usize, usize, usize);

/// Sorted `(colour, multiplicity)` lists of the edges between each ordered vertex pair.
fn pair_profiles(g: &MultiGraph, col: &Colouring) -> HashMap<(usize, usize), Vec<(usize, usize)>> {
    let mut counts: HashMap<EdgeKey, usize> = HashMap::new();
    for e in g.edges() {
        *counts
            .entry((g.source(e).0, g.range(e).0, col.edge[e.0]))
            .or_insert(0) += 1;
    }
    let mut profiles: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for ((s, r, k), count) in counts {
        profiles.entry((s, r)).or_default().push((k, count));
    }
    for list in profiles.values_mut() {
        list.sort();
    }
    profiles
}

fn signature(g: &MultiGraph, col: &Colouring, v: VertexIx) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs: Vec<usize> = g.out_edges(v).iter().map(|e| col.edge[e.0]).collect();
    let mut ins: Vec<usize> = g.in_edges(v).iter().map(|e| col.edge[e.0]).collect();
    outs.sort();
    ins.sort();
    (col.vertex[v.0], outs, ins)
}

/// Finds an isomorphism `a → b` preserving colours, if any.
pub fn find_isomorphism(
    a: &MultiGraph,
    ca: &Colouring,
    b: &MultiGraph,
    cb: &Colouring,
) -> Option<GraphMorphism> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let sig_a: Vec<_> = a.vertices().map(|v| signature(a, ca, v)).collect();
    let sig_b: Vec<_> = b.vertices().map(|v| signature(b, cb, v)).collect();
    {
        let (mut x, mut y) = (sig_a.clone(), sig_b.clone());
        x.sort();
        y.sort();
        if x != y {
            return None;
        }
    }
    let prof_a = pair_profiles(a, ca);
    let prof_b = pair_profiles(b, cb);
    let same = |p: (usize, usize), q: (usize, usize)| prof_a.get(&p) == prof_b.get(&q);
    // visit vertices so that each is adjacent to an earlier one when possible
    let order = {
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for start in a.vertices() {
            if seen[start.0] {
                continue;
            }
            seen[start.0] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                let nbrs = a
                    .out_edges(u)
                    .iter()
                    .map(|&e| a.range(e))
                    .chain(a.in_edges(u).iter().map(|&e| a.source(e)));
                for w in nbrs.collect::<Vec<_>>() {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    };
    let mut map: Vec<Option<VertexIx>> = vec![None; n];
    let mut used = vec![false; n];
    let consistent = |map: &[Option<VertexIx>], u: VertexIx, x: VertexIx| -> bool {
        same((u.0, u.0), (x.0, x.0))
            && map.iter().enumerate().all(|(w, image)| match image {
                Some(y) => same((u.0, w), (x.0, y.0)) && same((w, u.0), (y.0, x.0)),
                None => true,
            })
    };
    fn search(
        depth: usize,
        order: &[VertexIx],
        map: &mut Vec<Option<VertexIx>>,
        used: &mut Vec<bool>,
        sig_a: &[(usize, Vec<usize>, Vec<usize>)],
        sig_b: &[(usize, Vec<usize>, Vec<usize>)],
        consistent: &dyn Fn(&[Option<VertexIx>], VertexIx, VertexIx) -> bool,
    ) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for x in 0..sig_b.len() {
            if used[x] || sig_a[u.0] != sig_b[x] || !consistent(map, u, VertexIx(x)) {
                continue;
            }
            map[u.0] = Some(VertexIx(x));
            used[x] = true;
            if search(depth + 1, order, map, used, sig_a, sig_b, consistent) {
                return true;
            }
            map[u.0] = None;
            used[x] = false;
        }
        false
    }
    if !search(0, &order, &mut map, &mut used, &sig_a, &sig_b, &consistent) {
        return None;
    }
    let vmap: Vec<VertexIx> = map.into_iter().map(|x| x.expect("complete")).collect();
    // pair up edges with equal (source, range, colour) after mapping
    let mut pool: HashMap<EdgeKey, Vec<EdgeIx>> = HashMap::new();
    for e in b.edges().rev() {
        pool.entry((b.source(e).0, b.range(e).0, cb.edge[e.0]))
            .or_default()
            .push(e);
    }
    let mut emap = Vec::with_capacity(a.edge_count());
    for e in a.edges() {
        let key = (vmap[a.source(e).0].0, vmap[a.range(e).0].0, ca.edge[e.0]);
        emap.push(pool.get_mut(&key)?.pop()?);
    }
    GraphMorphism::new(a, b, vmap, emap).ok()
}

/// Checks that `m: a → b` is bijective on vertices and edges.
pub fn is_bijective(a: &MultiGraph, b: &MultiGraph, m: &GraphMorphism) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut hit_v = vec![false; b.vertex_count()];
    let mut hit_e = vec![false; b.edge_count()];
    a.vertices()
        .all(|v| !std::mem::replace(&mut hit_v[m.vertex(v).0], true))
        && a.edges()
            .all(|e| !std::mem::replace(&mut hit_e[m.edge(e).0], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn relabelled_cycle() {
        let a = parse_graph("vertex a\nvertex b\nvertex c\nedge x a b\nedge y b c\nedge z c a\n")
            .unwrap();
        let b = parse_graph("vertex p\nvertex q\nvertex r\nedge u q p\nedge v r q\nedge w p r\n")
            .unwrap();
        let m = find_isomorphism(&a, &Colouring::uniform(&a), &b, &Colouring::uniform(&b)).unwrap();
        assert!(is_bijective(&a, &b, &m));
    }

    #[test]
    fn non_isomorphic() {
        let a = parse_graph("vertex a\nvertex b\nedge x a b\nedge y a b\n").unwrap();
        let b = parse_graph("vertex a\nvertex b\nedge x a b\nedge y b a\n").unwrap();
        assert!(
            find_isomorphism(&a, &Colouring::uniform(&a), &b, &Colouring::uniform(&b)).is_none()
        );
    }

    #[test]
    fn colours_are_respected() {
        let a = parse_graph("vertex a\nvertex b\nedge x a a\nedge y b b\n").unwrap();
        let ca = Colouring {
            vertex: vec![0, 1],
            edge: vec![0, 1],
        };
        let cb = Colouring {
            vertex: vec![1, 0],
            edge: vec![1, 0],
        };
        let m = find_isomorphism(&a, &ca, &a, &cb).unwrap();
        assert_eq!(m.vertex(VertexIx(0)), VertexIx(1));
    }
}
