use serde_json::{json, Value};

use crate::graph::{reachable_from, MultiGraph, VertexIx};

/// Hereditary and saturated closures of a vertex set, with the order in which
/// saturation added vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturatedClosure {
    pub input: Vec<VertexIx>,
    /// `L_X`: everything reachable from `X` by paths of length at least zero.
    pub hereditary: Vec<VertexIx>,
    /// `Σ(X)`: the smallest saturated hereditary set containing `X`.
    pub saturated: Vec<VertexIx>,
    pub steps: Vec<VertexIx>,
}

impl SaturatedClosure {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "input": g.vertex_ids(&self.input),
            "hereditary": g.vertex_ids(&self.hereditary),
            "saturated": g.vertex_ids(&self.saturated),
            "steps": self.steps.iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>(),
        })
    }
}

fn members(flags: &[bool]) -> Vec<VertexIx> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| VertexIx(i))
        .collect()
}

pub fn hereditary_closure(g: &MultiGraph, x: &[VertexIx]) -> Vec<VertexIx> {
    members(&reachable_from(g, x.iter().copied()))
}

/// True when `v` emits finitely many edges, at least one.
fn is_finite_emitter(g: &MultiGraph, v: VertexIx) -> bool {
    let outs = g.out_edges(v);
    !outs.is_empty() && outs.iter().all(|&e| !g.edge(e).infinite)
}

/// Saturates the hereditary closure: repeatedly adds any finite emitter all of
/// whose edges land in the set. Sinks and infinite emitters are never added.
pub fn saturated_closure(g: &MultiGraph, x: &[VertexIx]) -> SaturatedClosure {
    let mut inside = reachable_from(g, x.iter().copied());
    let hereditary = members(&inside);
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for v in g.vertices() {
            if !inside[v.0]
                && is_finite_emitter(g, v)
                && g.out_edges(v).iter().all(|&e| inside[g.range(e).0])
            {
                inside[v.0] = true;
                steps.push(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut input = x.to_vec();
    input.sort();
    input.dedup();
    SaturatedClosure {
        input,
        hereditary,
        saturated: members(&inside),
        steps,
    }
}

/// Every edge leaving the set lands back inside it.
pub fn is_hereditary(g: &MultiGraph, set: &[bool]) -> bool {
    g.edges().all(|e| !set[g.source(e).0] || set[g.range(e).0])
}

/// No finite emitter outside the set has all its edges landing inside.
pub fn is_saturated(g: &MultiGraph, set: &[bool]) -> bool {
    g.vertices().all(|v| {
        set[v.0] || !is_finite_emitter(g, v) || g.out_edges(v).iter().any(|&e| !set[g.range(e).0])
    })
}
