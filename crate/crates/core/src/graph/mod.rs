//! Finite directed multigraphs, reduced walks and spanning trees.
//!
//! Vertices and edges carry opaque string ids; internally they are addressed
//! by dense indices ([`VertexIx`], [`EdgeIx`]) in insertion order. Parallel
//! edges and loops are ordinary edge records. An edge record may carry the
//! infinite-multiplicity marker, standing for a vertex that emits infinitely
//! many edges to the same range.

mod connectivity;
mod morphism;
mod parse;
mod tree;
mod walk;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use connectivity::{
    is_connected, is_strongly_connected, reachable_from, scc_partition, weak_components,
    SccPartition,
};
pub use morphism::GraphMorphism;
pub use parse::parse_graph;
pub use tree::SpanningTree;
pub use walk::{Direction, Path, SignedEdge, Walk};

/// Dense index of a vertex in a [`MultiGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIx(pub usize);

/// Dense index of an edge record in a [`MultiGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIx(pub usize);

impl VertexIx {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeIx {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: VertexIx,
    pub range: VertexIx,
    /// The record stands for infinitely many parallel edges.
    pub infinite: bool,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_lookup: HashMap<String, VertexIx>,
    edge_lookup: HashMap<String, EdgeIx>,
    // adjacency lists kept sorted by edge id
    out_edges: Vec<Vec<EdgeIx>>,
    in_edges: Vec<Vec<EdgeIx>>,
}

pub(crate) fn validate_id(id: &str) -> Result<()> {
    if id.is_empty() || id.starts_with('#') || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidId(id.to_string()));
    }
    Ok(())
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<VertexIx> {
        let id = id.into();
        validate_id(&id)?;
        if self.vertex_lookup.contains_key(&id) {
            return Err(Error::DuplicateId { kind: "vertex", id });
        }
        let ix = VertexIx(self.vertices.len());
        self.vertex_lookup.insert(id.clone(), ix);
        self.vertices.push(id);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        Ok(ix)
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        source: VertexIx,
        range: VertexIx,
    ) -> Result<EdgeIx> {
        self.insert_edge(id.into(), source, range, false)
    }

    /// Adds an edge record carrying the infinite-multiplicity marker.
    pub fn add_infinite_edge(
        &mut self,
        id: impl Into<String>,
        source: VertexIx,
        range: VertexIx,
    ) -> Result<EdgeIx> {
        self.insert_edge(id.into(), source, range, true)
    }

    fn insert_edge(
        &mut self,
        id: String,
        source: VertexIx,
        range: VertexIx,
        infinite: bool,
    ) -> Result<EdgeIx> {
        validate_id(&id)?;
        for v in [source, range] {
            if v.0 >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        if self.edge_lookup.contains_key(&id) {
            return Err(Error::DuplicateId { kind: "edge", id });
        }
        let ix = EdgeIx(self.edges.len());
        self.edge_lookup.insert(id.clone(), ix);
        self.edges.push(Edge {
            id,
            source,
            range,
            infinite,
        });
        let edges = &self.edges;
        let by_id = |a: &EdgeIx, b: &EdgeIx| edges[a.0].id.cmp(&edges[b.0].id);
        let out = &mut self.out_edges[source.0];
        let pos = out
            .binary_search_by(|x| by_id(x, &ix))
            .unwrap_or_else(|p| p);
        out.insert(pos, ix);
        let inc = &mut self.in_edges[range.0];
        let pos = inc
            .binary_search_by(|x| by_id(x, &ix))
            .unwrap_or_else(|p| p);
        inc.insert(pos, ix);
        Ok(ix)
    }

    /// Adds an edge between two vertices named by id.
    pub fn add_edge_by_name(&mut self, id: &str, source: &str, range: &str) -> Result<EdgeIx> {
        let s = self.vertex_or_undeclared(source)?;
        let r = self.vertex_or_undeclared(range)?;
        self.add_edge(id, s, r)
    }

    fn vertex_or_undeclared(&self, id: &str) -> Result<VertexIx> {
        self.vertex(id)
            .ok_or_else(|| Error::UndeclaredVertex(id.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(
        &self,
    ) -> impl DoubleEndedIterator<Item = VertexIx> + ExactSizeIterator + Clone {
        (0..self.vertices.len()).map(VertexIx)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeIx> + ExactSizeIterator + Clone {
        (0..self.edges.len()).map(EdgeIx)
    }

    pub fn vertex(&self, id: &str) -> Option<VertexIx> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeIx> {
        self.edge_lookup.get(id).copied()
    }

    /// Resolves a vertex id, failing with [`Error::UnknownVertex`].
    pub fn require_vertex(&self, id: &str) -> Result<VertexIx> {
        self.vertex(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn require_edge(&self, id: &str) -> Result<EdgeIx> {
        self.edge_by_id(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn vertex_id(&self, v: VertexIx) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_id(&self, e: EdgeIx) -> &str {
        &self.edges[e.0].id
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e.0]
    }

    pub fn source(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].range
    }

    pub fn is_loop_edge(&self, e: EdgeIx) -> bool {
        self.source(e) == self.range(e)
    }

    /// Edges with source `v`, sorted by edge id.
    pub fn out_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.out_edges[v.0]
    }

    /// Edges with range `v`, sorted by edge id.
    pub fn in_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.in_edges[v.0]
    }

    pub fn successors(&self, v: VertexIx) -> impl Iterator<Item = VertexIx> + '_ {
        self.out_edges[v.0].iter().map(|&e| self.range(e))
    }

    /// Edge records carrying the infinite marker.
    pub fn infinite_edges(&self) -> impl Iterator<Item = EdgeIx> + '_ {
        self.edges().filter(|&e| self.edges[e.0].infinite)
    }

    /// Fails with [`Error::NotRowFinite`] when an infinite marker is present.
    pub fn require_row_finite(&self) -> Result<()> {
        match self.infinite_edges().next() {
            Some(e) => Err(Error::NotRowFinite(self.edge_id(e).to_string())),
            None => Ok(()),
        }
    }

    pub fn vertex_ids<'a>(&'a self, set: impl IntoIterator<Item = &'a VertexIx>) -> Vec<String> {
        let mut ids: Vec<String> = set
            .into_iter()
            .map(|&v| self.vertex_id(v).to_string())
            .collect();
        ids.sort();
        ids
    }

    /// Resolves a list of vertex ids.
    pub fn resolve_vertices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<VertexIx>> {
        ids.iter()
            .map(|s| self.require_vertex(s.as_ref()))
            .collect()
    }

    /// Subgraph on `vertices` keeping every edge whose source lies in the set.
    ///
    /// Fails when such an edge leaves the set.
    pub fn out_closed_subgraph(&self, vertices: &[VertexIx]) -> Result<MultiGraph> {
        let mut member = vec![false; self.vertex_count()];
        for &v in vertices {
            member[v.0] = true;
        }
        let mut sub = MultiGraph::new();
        let mut map = HashMap::new();
        for v in self.vertices().filter(|v| member[v.0]) {
            map.insert(v, sub.add_vertex(self.vertex_id(v))?);
        }
        for e in self.edges().filter(|&e| member[self.source(e).0]) {
            let edge = self.edge(e);
            let r = *map.get(&edge.range).ok_or_else(|| {
                Error::Precondition(format!("edge {} leaves the vertex set", edge.id))
            })?;
            sub.insert_edge(edge.id.clone(), map[&edge.source], r, edge.infinite)?;
        }
        Ok(sub)
    }

    /// Subgraph induced on `vertices` (both endpoints inside).
    pub fn induced_subgraph(&self, vertices: &[VertexIx]) -> MultiGraph {
        let mut member = vec![false; self.vertex_count()];
        for &v in vertices {
            member[v.0] = true;
        }
        let mut sub = MultiGraph::new();
        let mut map = HashMap::new();
        for v in self.vertices().filter(|v| member[v.0]) {
            map.insert(
                v,
                sub.add_vertex(self.vertex_id(v)).expect("ids are unique"),
            );
        }
        for e in self.edges() {
            let edge = self.edge(e);
            if member[edge.source.0] && member[edge.range.0] {
                sub.insert_edge(
                    edge.id.clone(),
                    map[&edge.source],
                    map[&edge.range],
                    edge.infinite,
                )
                .expect("ids are unique");
            }
        }
        sub
    }

    /// Serializes to the line-oriented graph file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(v);
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}",
                e.id, self.vertices[e.source.0], self.vertices[e.range.0]
            ));
            if e.infinite {
                out.push_str(" inf");
            }
            out.push('\n');
        }
        out
    }

    /// Graphviz DOT rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph E {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", v.replace('"', "\\\"")));
        }
        for e in &self.edges {
            let style = if e.infinite { ", style=bold" } else { "" };
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"{}];\n",
                self.vertices[e.source.0].replace('"', "\\\""),
                self.vertices[e.range.0].replace('"', "\\\""),
                e.id.replace('"', "\\\""),
                style
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
