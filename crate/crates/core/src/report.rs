//! Decision procedures assembled from the lower modules: simplicity of
//! `C*(E)`, the Morita classification of simple graph algebras, simplicity
//! and decomposition of the AF core, and Bratteli diagrams.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, MultiGraph, SpanningTree, VertexIx};
use crate::group::Cardinal;
use crate::skew::{
    component_as_skew, component_count, z_component_cofinal, z_window, ComponentSkew,
    ZCofinalCertificate,
};
use crate::structure::{
    cofinal_sc_subgraph, condition_k, is_cofinal, period, saturated_closure, sinks, sources,
    strong_period, CofinalReport, KReport, SaturatedClosure, ScSubgraph,
};
use crate::voltage::VoltageLabeling;

/// Every vertex reaches every vertex emitting infinitely many edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitterReport {
    pub holds: bool,
    /// A vertex that does not reach the infinite emitter, and the emitter.
    pub witness: Option<(VertexIx, VertexIx)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub cofinal: CofinalReport,
    pub condition_k: KReport,
    pub infinite_emitters: EmitterReport,
    /// Whether every vertex reaches every sink. Informational: it is not
    /// part of the verdict, which follows the three conditions above.
    pub sinks_reachable: bool,
}

impl SimplicityVerdict {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "simple": self.simple,
            "cofinal": self.cofinal.to_json(g),
            "condition_k": self.condition_k.to_json(g),
            "infinite_emitters": {
                "holds": self.infinite_emitters.holds,
                "witness": self.infinite_emitters.witness.map(|(v, w)| json!({
                    "vertex": g.vertex_id(v),
                    "emitter": g.vertex_id(w),
                })),
            },
            "sinks_reachable": self.sinks_reachable,
        })
    }
}

fn reaches_all(g: &MultiGraph, target: VertexIx) -> Option<VertexIx> {
    let reach = crate::structure::reaching(g, &[target]);
    g.vertices().find(|v| !reach[v.0])
}

/// Simplicity of `C*(E)`: cofinality, condition (K), and every vertex
/// reaching every vertex with infinitely many out-edges.
pub fn csimple(g: &MultiGraph, cap: usize) -> Result<SimplicityVerdict> {
    let cofinal = is_cofinal(g);
    let k = condition_k(g, cap)?;
    let mut emitters: Vec<VertexIx> = g.infinite_edges().map(|e| g.source(e)).collect();
    emitters.dedup();
    let witness = emitters
        .into_iter()
        .find_map(|w| reaches_all(g, w).map(|v| (v, w)));
    let infinite_emitters = EmitterReport {
        holds: witness.is_none(),
        witness,
    };
    let sinks_reachable = sinks(g).into_iter().all(|s| reaches_all(g, s).is_none());
    Ok(SimplicityVerdict {
        simple: cofinal.cofinal && k.holds && infinite_emitters.holds,
        cofinal,
        condition_k: k,
        infinite_emitters,
        sinks_reachable,
    })
}

/// Morita type of a simple graph algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// No loops: `C*(E)` is AF.
    Af,
    /// Morita equivalent to `C*(F)` for the cofinal strongly connected subgraph `F`.
    MoritaSc {
        vertices: Vec<VertexIx>,
        graph: MultiGraph,
    },
    /// `C*(E)` is not simple.
    None,
}

impl Classification {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        match self {
            Classification::Af => json!({"kind": "AF"}),
            Classification::MoritaSc { vertices, graph } => json!({
                "kind": "MORITA_SC",
                "vertices": g.vertex_ids(vertices),
                "edges": graph.edges().map(|e| graph.edge_id(e)).collect::<Vec<_>>(),
            }),
            Classification::None => json!({"kind": "NONE"}),
        }
    }
}

/// AF or Morita equivalent to a strongly connected graph algebra; requires `C*(E)` simple.
pub fn classify(g: &MultiGraph, cap: usize) -> Result<Classification> {
    if !csimple(g, cap)?.simple {
        return Err(Error::NotSimple);
    }
    classify_simple(g)
}

fn classify_simple(g: &MultiGraph) -> Result<Classification> {
    match cofinal_sc_subgraph(g) {
        ScSubgraph::NoLoops => {
            if g.infinite_edges().next().is_some() {
                return Err(Error::CertificateFailed(
                    "simple loopless graph with an infinite emitter".into(),
                ));
            }
            Ok(Classification::Af)
        }
        ScSubgraph::Found { vertices, graph } => Ok(Classification::MoritaSc { vertices, graph }),
        other => Err(Error::CertificateFailed(format!(
            "simple graph without a cofinal strongly connected subgraph: {other:?}"
        ))),
    }
}

/// Why the AF core fails to be simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    EmptyGraph,
    /// A vertex emitting infinitely many edges.
    InfiniteEmitter(VertexIx),
    /// A sink in a graph with edges or several vertices.
    Sink(VertexIx),
    NoScSubgraph(ScSubgraph),
    /// The cofinal strongly connected subgraph has period `d > 1`.
    Period(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreReason {
    SingleVertex,
    CofinalScPeriod1,
    NotSimple(Obstruction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreVerdict {
    pub af_core_simple: bool,
    pub reason: CoreReason,
    /// Period of the cofinal strongly connected subgraph, when there is one.
    pub period: Option<u64>,
    /// Set when `C*(E)` is simple; `None` also covers a cycle cap overrun.
    pub classification: Classification,
    /// A nontrivial saturated hereditary set `Σ({v})`, if one exists.
    pub saturated_witness: Option<SaturatedClosure>,
    pub sources: Vec<VertexIx>,
    pub sinks: Vec<VertexIx>,
}

impl CoreVerdict {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let reason = match &self.reason {
            CoreReason::SingleVertex => json!({"kind": "SINGLE_VERTEX"}),
            CoreReason::CofinalScPeriod1 => json!({"kind": "COFINAL_SC_PERIOD_1"}),
            CoreReason::NotSimple(o) => {
                let witness = match o {
                    Obstruction::EmptyGraph => json!({"empty": true}),
                    Obstruction::InfiniteEmitter(v) => {
                        json!({"infinite_emitter": g.vertex_id(*v)})
                    }
                    Obstruction::Sink(v) => json!({"sink": g.vertex_id(*v)}),
                    Obstruction::NoScSubgraph(s) => json!({"sc_subgraph": s.to_json(g)}),
                    Obstruction::Period(d) => json!({"period": d}),
                };
                json!({"kind": "NOT_SIMPLE", "witness": witness})
            }
        };
        json!({
            "af_core_simple": self.af_core_simple,
            "reason": reason,
            "period": self.period,
            "classification": self.classification.to_json(g),
            "saturated_witness": self.saturated_witness.as_ref().map(|s| s.to_json(g)),
            "sources": g.vertex_ids(&self.sources),
            "sinks": g.vertex_ids(&self.sinks),
        })
    }
}

/// First `v` whose saturated hereditary closure is a proper subset.
pub fn nontrivial_saturated_set(g: &MultiGraph) -> Option<SaturatedClosure> {
    g.vertices()
        .map(|v| saturated_closure(g, &[v]))
        .find(|s| s.saturated.len() < g.vertex_count())
}

/// Simplicity of the AF core `C*(E)^γ`.
///
/// True for a single vertex without edges, and otherwise exactly when `E`
/// is row-finite and has a cofinal strongly connected subgraph of period 1.
/// Infinite emitters and sinks are dispatched first; sources are allowed.
pub fn af_core_simple(g: &MultiGraph, cap: usize) -> CoreVerdict {
    let (reason, period) = core_reason(g);
    let classification = match csimple(g, cap) {
        Ok(v) if v.simple => classify_simple(g).unwrap_or(Classification::None),
        _ => Classification::None,
    };
    CoreVerdict {
        af_core_simple: matches!(
            reason,
            CoreReason::SingleVertex | CoreReason::CofinalScPeriod1
        ),
        reason,
        period,
        classification,
        saturated_witness: nontrivial_saturated_set(g),
        sources: sources(g),
        sinks: sinks(g),
    }
}

fn core_reason(g: &MultiGraph) -> (CoreReason, Option<u64>) {
    let fail = |o| (CoreReason::NotSimple(o), None);
    if g.is_empty() {
        return fail(Obstruction::EmptyGraph);
    }
    if g.vertex_count() == 1 && g.edge_count() == 0 {
        return (CoreReason::SingleVertex, None);
    }
    if let Some(e) = g.infinite_edges().next() {
        return fail(Obstruction::InfiniteEmitter(g.source(e)));
    }
    if let Some(&v) = sinks(g).first() {
        return fail(Obstruction::Sink(v));
    }
    let sc = cofinal_sc_subgraph(g);
    let Some(f) = sc.graph() else {
        return fail(Obstruction::NoScSubgraph(sc));
    };
    let d = strong_period(f)
        .expect("found subgraph is strongly connected")
        .period;
    if d == 1 {
        (CoreReason::CofinalScPeriod1, Some(1))
    } else {
        (CoreReason::NotSimple(Obstruction::Period(d)), Some(d))
    }
}

fn require_strong_row_finite(g: &MultiGraph) -> Result<()> {
    g.require_row_finite()?;
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(())
}

/// `C*(E)^γ` as a direct sum of `d` isomorphic AF algebras, one per component
/// of `E ×_c Z` with `c ≡ 1`.
#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    pub period: u64,
    pub components: Cardinal,
    pub component: ComponentSkew,
    pub cofinal: ZCofinalCertificate,
}

impl CoreDecomposition {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "period": self.period,
            "summands": self.components.to_json(),
            "component": self.component.to_json(g),
            "summands_simple": self.cofinal.cofinal,
            "cofinal_certificate": serde_json::to_value(&self.cofinal).expect("plain data"),
        })
    }
}

pub fn af_core_decomposition(g: &MultiGraph) -> Result<CoreDecomposition> {
    require_strong_row_finite(g)?;
    let d = strong_period(g)?.period;
    let ones = VoltageLabeling::ones(g)?;
    let components = component_count(g, &ones)?;
    if components != Cardinal::Finite(d) {
        return Err(Error::CertificateFailed(format!(
            "{components:?} components for period {d}"
        )));
    }
    let tree = SpanningTree::bfs(g, VertexIx(0))?;
    let component = component_as_skew(g, &ones, &tree, VertexIx(0))?;
    Ok(CoreDecomposition {
        period: d,
        components,
        component,
        cofinal: z_component_cofinal(g)?,
    })
}

/// Levels `0..=L` of the Bratteli diagram of the component of `(v, 0)` in
/// `E ×_c Z`, sampled every `d` levels: each level holds the vertices in the
/// residue class of `v`, and consecutive levels are joined by the paths of
/// length `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub period: u64,
    pub vertices: Vec<VertexIx>,
    pub levels: usize,
    /// `multiplicities[n][i][j]`: edges from vertex `i` on level `n` to vertex `j` on level `n + 1`.
    pub multiplicities: Vec<Vec<Vec<u64>>>,
}

impl BratteliDiagram {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "period": self.period,
            "levels": (0..=self.levels).map(|n| {
                self.vertices.iter().map(|&v| format!("{}@{n}", g.vertex_id(v))).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "multiplicities": self.multiplicities,
        })
    }

    pub fn to_dot(&self, g: &MultiGraph) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (n, m) in self.multiplicities.iter().enumerate() {
            for (i, row) in m.iter().enumerate() {
                for (j, &k) in row.iter().enumerate() {
                    if k > 0 {
                        out.push_str(&format!(
                            "  \"{}@{n}\" -> \"{}@{}\" [label=\"{k}\"];\n",
                            g.vertex_id(self.vertices[i]),
                            g.vertex_id(self.vertices[j]),
                            n + 1
                        ));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Path-count matrix `A^k` with overflow checks.
pub fn path_counts(g: &MultiGraph, k: u64) -> Result<Vec<Vec<u64>>> {
    g.require_row_finite()?;
    let n = g.vertex_count();
    let mut a = vec![vec![0u64; n]; n];
    for e in g.edges() {
        a[g.source(e).0][g.range(e).0] += 1;
    }
    let overflow = || Error::CertificateFailed("path count overflows u64".into());
    let mut power: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for _ in 0..k {
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for (l, &p) in power[i].iter().enumerate() {
                if p == 0 {
                    continue;
                }
                for j in 0..n {
                    let add = p.checked_mul(a[l][j]).ok_or_else(overflow)?;
                    next[i][j] = next[i][j].checked_add(add).ok_or_else(overflow)?;
                }
            }
        }
        power = next;
    }
    Ok(power)
}

pub fn bratteli(g: &MultiGraph, v: VertexIx, levels: usize) -> Result<BratteliDiagram> {
    require_strong_row_finite(g)?;
    if levels == 0 {
        return Err(Error::Precondition("at least one level is required".into()));
    }
    let rep = period(g, v);
    let vertices: Vec<VertexIx> = g
        .vertices()
        .filter(|&w| rep.residue(w) == Some(0))
        .collect();
    let ad = path_counts(g, rep.period)?;
    let block: Vec<Vec<u64>> = vertices
        .iter()
        .map(|i| vertices.iter().map(|j| ad[i.0][j.0]).collect())
        .collect();
    Ok(BratteliDiagram {
        period: rep.period,
        vertices,
        levels,
        multiplicities: vec![block; levels],
    })
}

/// Graph-level certificates that `C*(E)` is stably a crossed product of a
/// simple AF algebra by `Z`.
#[derive(Debug, Clone)]
pub struct CrossedProductReport {
    pub decomposition: CoreDecomposition,
    pub window: (i64, i64),
    pub window_vertices: usize,
    pub window_edges: usize,
    pub window_acyclic: bool,
    pub window_graded: bool,
}

impl CrossedProductReport {
    pub fn statement(&self) -> String {
        format!(
            "C*(E) is stably isomorphic to C*(E x_c Z) x Z; C*(E x_c Z) splits into {} \
             isomorphic components, each simple AF",
            self.decomposition.period
        )
    }

    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "decomposition": self.decomposition.to_json(g),
            "window": {
                "levels": [self.window.0, self.window.1],
                "vertices": self.window_vertices,
                "edges": self.window_edges,
                "acyclic": self.window_acyclic,
                "graded": self.window_graded,
            },
            "statement": self.statement(),
        })
    }
}

pub fn crossed_product_report(g: &MultiGraph) -> Result<CrossedProductReport> {
    let decomposition = af_core_decomposition(g)?;
    let window = decomposition.cofinal.window;
    let w = z_window(g, &VoltageLabeling::ones(g)?, window.0, window.1)?;
    Ok(CrossedProductReport {
        decomposition,
        window,
        window_vertices: w.graph.vertex_count(),
        window_edges: w.graph.edge_count(),
        window_acyclic: w.is_acyclic(),
        window_graded: w.is_graded(),
    })
}
