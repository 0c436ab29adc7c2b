use std::collections::{BTreeSet, VecDeque};

use super::{is_connected, EdgeIx, MultiGraph, SignedEdge, VertexIx, Walk};
use crate::error::{Error, Result};

/// A spanning tree with its tree walks `b_w` from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: VertexIx,
    edges: BTreeSet<EdgeIx>,
    /// Signed edge by which each non-root vertex is entered from its parent.
    parent: Vec<Option<SignedEdge>>,
    walks: Vec<Walk>,
}

impl SpanningTree {
    /// Deterministic spanning tree rooted at `root`.
    ///
    /// Breadth-first search along forward edges, taking out-edges in edge-id
    /// order. When the forward search stalls, the discovered vertices are
    /// swept in discovery order and each unseen source of an in-edge (again
    /// in edge-id order) is attached by the reversed edge; the forward search
    /// then resumes from the newly attached vertices. For strongly connected
    /// graphs every tree walk is therefore a directed path.
    pub fn bfs(g: &MultiGraph, root: VertexIx) -> Result<Self> {
        if root.0 >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", root.0)));
        }
        if !is_connected(g) {
            return Err(Error::NotConnected);
        }
        let n = g.vertex_count();
        let mut parent: Vec<Option<SignedEdge>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root.0] = true;
        loop {
            while let Some(u) = queue.pop_front() {
                for &e in g.out_edges(u) {
                    let w = g.range(e);
                    if !seen[w.0] {
                        seen[w.0] = true;
                        parent[w.0] = Some(SignedEdge::forward(e));
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
            if order.len() == n {
                break;
            }
            let snapshot = order.clone();
            for u in snapshot {
                for &e in g.in_edges(u) {
                    let w = g.source(e);
                    if !seen[w.0] {
                        seen[w.0] = true;
                        parent[w.0] = Some(SignedEdge::reverse(e));
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
            if queue.is_empty() {
                // unreachable for connected graphs
                return Err(Error::NotConnected);
            }
        }
        Self::from_parents(g, root, parent, &order)
    }

    /// Builds a tree from an explicit set of tree edges.
    pub fn from_edges(g: &MultiGraph, root: VertexIx, edges: &[EdgeIx]) -> Result<Self> {
        let n = g.vertex_count();
        if root.0 >= n {
            return Err(Error::UnknownVertex(format!("#{}", root.0)));
        }
        let set: BTreeSet<EdgeIx> = edges.iter().copied().collect();
        if set.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                set.len(),
                n
            )));
        }
        let mut parent: Vec<Option<SignedEdge>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[root.0] = true;
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in g.out_edges(u).iter().filter(|e| set.contains(e)) {
                let w = g.range(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(SignedEdge::forward(e));
                    order.push(w);
                    queue.push_back(w);
                }
            }
            for &e in g.in_edges(u).iter().filter(|e| set.contains(e)) {
                let w = g.source(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(SignedEdge::reverse(e));
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidTree("edges do not span the graph".into()));
        }
        Self::from_parents(g, root, parent, &order)
    }

    fn from_parents(
        g: &MultiGraph,
        root: VertexIx,
        parent: Vec<Option<SignedEdge>>,
        order: &[VertexIx],
    ) -> Result<Self> {
        let mut walks: Vec<Walk> = g.vertices().map(Walk::empty).collect();
        for &w in order.iter().skip(1) {
            let step = parent[w.0].expect("non-root vertex has a parent");
            let from = step.source(g);
            let walk = walks[from.0].concat(&Walk::reduce(g, from, &[step])?)?;
            walks[w.0] = walk;
        }
        let edges = parent.iter().flatten().map(|s| s.edge).collect();
        Ok(Self {
            root,
            edges,
            parent,
            walks,
        })
    }

    pub fn root(&self) -> VertexIx {
        self.root
    }

    pub fn edges(&self) -> &BTreeSet<EdgeIx> {
        &self.edges
    }

    pub fn contains(&self, e: EdgeIx) -> bool {
        self.edges.contains(&e)
    }

    pub fn parent(&self, w: VertexIx) -> Option<SignedEdge> {
        self.parent[w.0]
    }

    /// The unique reduced tree walk `b_w` from the root to `w`.
    pub fn walk_to(&self, w: VertexIx) -> &Walk {
        &self.walks[w.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn single_vertex() {
        let g = parse_graph("vertex v\n").unwrap();
        let t = SpanningTree::bfs(&g, VertexIx(0)).unwrap();
        assert!(t.edges().is_empty());
        assert!(t.walk_to(VertexIx(0)).is_empty());
    }

    #[test]
    fn c3_tree_follows_the_cycle() {
        let g = parse_graph(
            "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v1\n",
        )
        .unwrap();
        let t = SpanningTree::bfs(&g, g.vertex("v1").unwrap()).unwrap();
        let ids: Vec<_> = t.edges().iter().map(|&e| g.edge_id(e)).collect();
        assert_eq!(ids, ["e1", "e2"]);
        let b3 = t.walk_to(g.vertex("v3").unwrap());
        assert_eq!(b3.display(&g), "e1 e2");
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = parse_graph("vertex a\nvertex b\n").unwrap();
        assert_eq!(SpanningTree::bfs(&g, VertexIx(0)), Err(Error::NotConnected));
    }

    #[test]
    fn reverse_edges_used_when_forward_search_stalls() {
        let g = parse_graph("vertex a\nvertex b\nvertex c\nedge x b a\nedge y b c\n").unwrap();
        let t = SpanningTree::bfs(&g, g.vertex("a").unwrap()).unwrap();
        assert_eq!(t.walk_to(g.vertex("c").unwrap()).display(&g), "x^-1 y");
    }

    #[test]
    fn explicit_edges() {
        let g = parse_graph(
            "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v1\n",
        )
        .unwrap();
        let e = |s| g.edge_by_id(s).unwrap();
        let t = SpanningTree::from_edges(&g, VertexIx(0), &[e("e1"), e("e3")]).unwrap();
        assert_eq!(t.walk_to(VertexIx(2)).display(&g), "e3^-1");
        assert!(SpanningTree::from_edges(&g, VertexIx(0), &[e("e1")]).is_err());
    }
}
