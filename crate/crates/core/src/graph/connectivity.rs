use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

use super::{MultiGraph, VertexIx};

fn to_petgraph(g: &MultiGraph) -> DiGraph<(), ()> {
    let mut pg = DiGraph::with_capacity(g.vertex_count(), g.edge_count());
    for _ in g.vertices() {
        pg.add_node(());
    }
    for e in g.edges() {
        pg.add_edge(
            NodeIndex::new(g.source(e).0),
            NodeIndex::new(g.range(e).0),
            (),
        );
    }
    pg
}

/// Components of the underlying undirected graph, each sorted, ordered by
/// smallest member.
pub fn weak_components(g: &MultiGraph) -> Vec<Vec<VertexIx>> {
    let mut uf = UnionFind::<usize>::new(g.vertex_count());
    for e in g.edges() {
        uf.union(g.source(e).0, g.range(e).0);
    }
    let mut slot = vec![usize::MAX; g.vertex_count()];
    let mut out: Vec<Vec<VertexIx>> = Vec::new();
    for v in g.vertices() {
        let root = uf.find(v.0);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(v);
    }
    out
}

/// Any two vertices are joined by a walk. Vacuously true with fewer than two vertices.
pub fn is_connected(g: &MultiGraph) -> bool {
    weak_components(g).len() <= 1
}

/// Partition of the vertices under mutual reachability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    /// Classes, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<VertexIx>>,
    /// Index into `classes` for every vertex.
    pub class_of: Vec<usize>,
    /// A class is nontrivial when it carries a loop: more than one vertex,
    /// or a single vertex with a loop edge.
    pub nontrivial: Vec<bool>,
}

impl SccPartition {
    pub fn nontrivial_classes(&self) -> impl Iterator<Item = (usize, &[VertexIx])> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.nontrivial[*i])
            .map(|(i, c)| (i, c.as_slice()))
    }

    pub fn same_class(&self, a: VertexIx, b: VertexIx) -> bool {
        self.class_of[a.0] == self.class_of[b.0]
    }

    /// True when `v` lies on some loop.
    pub fn on_loop(&self, v: VertexIx) -> bool {
        self.nontrivial[self.class_of[v.0]]
    }
}

pub fn scc_partition(g: &MultiGraph) -> SccPartition {
    let pg = to_petgraph(g);
    let mut classes: Vec<Vec<VertexIx>> = tarjan_scc(&pg)
        .into_iter()
        .map(|c| {
            let mut c: Vec<VertexIx> = c.into_iter().map(|n| VertexIx(n.index())).collect();
            c.sort();
            c
        })
        .collect();
    classes.sort();
    let mut class_of = vec![0; g.vertex_count()];
    for (i, c) in classes.iter().enumerate() {
        for v in c {
            class_of[v.0] = i;
        }
    }
    let mut nontrivial: Vec<bool> = classes.iter().map(|c| c.len() > 1).collect();
    for e in g.edges().filter(|&e| g.is_loop_edge(e)) {
        nontrivial[class_of[g.source(e).0]] = true;
    }
    SccPartition {
        classes,
        class_of,
        nontrivial,
    }
}

/// Every ordered pair of vertices, including `(v, v)`, is joined by a path of
/// length at least one. A lone vertex without a loop does not qualify.
pub fn is_strongly_connected(g: &MultiGraph) -> bool {
    if g.is_empty() {
        return false;
    }
    let p = scc_partition(g);
    p.classes.len() == 1 && p.nontrivial[0]
}

/// Vertices reachable from `sources` by paths of length at least zero.
pub fn reachable_from(g: &MultiGraph, sources: impl IntoIterator<Item = VertexIx>) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for s in sources {
        if !seen[s.0] {
            seen[s.0] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u) {
            if !seen[w.0] {
                seen[w.0] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}
