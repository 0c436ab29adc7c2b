use serde_json::{json, Value};

use crate::graph::{scc_partition, EdgeIx, MultiGraph, VertexIx};

/// Vertices from which some vertex of `targets` is reachable (including the targets).
pub fn reaching(g: &MultiGraph, targets: &[VertexIx]) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = Vec::new();
    for &t in targets {
        if !seen[t.0] {
            seen[t.0] = true;
            stack.push(t);
        }
    }
    while let Some(u) = stack.pop() {
        for &e in g.in_edges(u) {
            let w = g.source(e);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalReport {
    pub cofinal: bool,
    /// A vertex that cannot reach the given loop-carrying component.
    pub witness: Option<(VertexIx, Vec<VertexIx>)>,
}

impl CofinalReport {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "cofinal": self.cofinal,
            "witness": self.witness.as_ref().map(|(v, c)| json!({
                "vertex": g.vertex_id(*v),
                "component": g.vertex_ids(c),
            })),
        })
    }
}

/// Cofinality of a finite graph.
///
/// Every infinite path eventually stays inside one strongly connected
/// component carrying a loop, and visits its vertices infinitely often only
/// if it cycles there; conversely every such component carries an infinite
/// path. So the graph is cofinal exactly when every vertex reaches every
/// loop-carrying component.
pub fn is_cofinal(g: &MultiGraph) -> CofinalReport {
    let scc = scc_partition(g);
    for (_, class) in scc.nontrivial_classes() {
        let reach = reaching(g, class);
        if let Some(v) = g.vertices().find(|v| !reach[v.0]) {
            return CofinalReport {
                cofinal: false,
                witness: Some((v, class.to_vec())),
            };
        }
    }
    CofinalReport {
        cofinal: true,
        witness: None,
    }
}

/// Outcome of the search for a cofinal strongly connected subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScSubgraph {
    /// The unique loop-carrying component with every edge it emits.
    Found {
        vertices: Vec<VertexIx>,
        graph: MultiGraph,
    },
    NoLoops,
    /// More than one component carries a loop.
    SeveralLoopClasses(usize),
    /// An edge leaves the loop-carrying component.
    HasExit(EdgeIx),
    /// A vertex does not reach the loop-carrying component.
    NotReached(VertexIx),
}

impl ScSubgraph {
    pub fn graph(&self) -> Option<&MultiGraph> {
        match self {
            ScSubgraph::Found { graph, .. } => Some(graph),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Option<&[VertexIx]> {
        match self {
            ScSubgraph::Found { vertices, .. } => Some(vertices),
            _ => None,
        }
    }

    pub fn to_json(&self, g: &MultiGraph) -> Value {
        match self {
            ScSubgraph::Found { vertices, graph } => json!({
                "found": true,
                "vertices": g.vertex_ids(vertices),
                "edges": graph.edges().map(|e| graph.edge_id(e).to_string()).collect::<Vec<_>>(),
            }),
            ScSubgraph::NoLoops => json!({"found": false, "reason": "no loops"}),
            ScSubgraph::SeveralLoopClasses(k) => {
                json!({"found": false, "reason": "several loop classes", "classes": k})
            }
            ScSubgraph::HasExit(e) => {
                json!({"found": false, "reason": "exit", "edge": g.edge_id(*e)})
            }
            ScSubgraph::NotReached(v) => {
                json!({"found": false, "reason": "unreached vertex", "vertex": g.vertex_id(*v)})
            }
        }
    }
}

/// A strongly connected subgraph `F` that every infinite path eventually
/// enters and never leaves, and that every vertex reaches.
///
/// `F⁰` is the unique loop-carrying component and `F¹` all edges emitted
/// from it, which must stay inside. Reachability from every vertex makes `E`
/// itself cofinal, so `F` exists only for cofinal graphs.
pub fn cofinal_sc_subgraph(g: &MultiGraph) -> ScSubgraph {
    let scc = scc_partition(g);
    let classes: Vec<&[VertexIx]> = scc.nontrivial_classes().map(|(_, c)| c).collect();
    let class = match classes.as_slice() {
        [] => return ScSubgraph::NoLoops,
        [c] => *c,
        many => return ScSubgraph::SeveralLoopClasses(many.len()),
    };
    for &v in class {
        if let Some(&e) = g
            .out_edges(v)
            .iter()
            .find(|&&e| !scc.same_class(v, g.range(e)))
        {
            return ScSubgraph::HasExit(e);
        }
    }
    let reach = reaching(g, class);
    if let Some(v) = g.vertices().find(|v| !reach[v.0]) {
        return ScSubgraph::NotReached(v);
    }
    let graph = g
        .out_closed_subgraph(class)
        .expect("component has no exits");
    ScSubgraph::Found {
        vertices: class.to_vec(),
        graph,
    }
}
