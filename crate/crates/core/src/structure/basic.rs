use crate::graph::{MultiGraph, VertexIx};

/// Vertices emitting no edges.
pub fn sinks(g: &MultiGraph) -> Vec<VertexIx> {
    g.vertices()
        .filter(|&v| g.out_edges(v).is_empty())
        .collect()
}

/// Vertices receiving no edges.
pub fn sources(g: &MultiGraph) -> Vec<VertexIx> {
    g.vertices().filter(|&v| g.in_edges(v).is_empty()).collect()
}

/// False iff some edge record carries the infinite marker.
pub fn is_row_finite(g: &MultiGraph) -> bool {
    g.infinite_edges().next().is_none()
}

/// Vertex incidence matrix `A[u][w]` = number of edges from `u` to `w`;
/// `None` entries stand for infinitely many.
pub fn incidence_matrix(g: &MultiGraph) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count();
    let mut a = vec![vec![Some(0u64); n]; n];
    for e in g.edges() {
        let cell = &mut a[g.source(e).0][g.range(e).0];
        *cell = match (*cell, g.edge(e).infinite) {
            (Some(k), false) => Some(k + 1),
            _ => None,
        };
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn one_way_edge() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w\n").unwrap();
        assert_eq!(sinks(&g), vec![VertexIx(1)]);
        assert_eq!(sources(&g), vec![VertexIx(0)]);
        assert!(is_row_finite(&g));
    }

    #[test]
    fn loop_vertex_is_neither() {
        let g = parse_graph("vertex v\nedge e v v\n").unwrap();
        assert!(sinks(&g).is_empty());
        assert!(sources(&g).is_empty());
    }

    #[test]
    fn infinite_marker() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w inf\nedge f u w\n").unwrap();
        assert!(!is_row_finite(&g));
        assert_eq!(incidence_matrix(&g)[0][1], None);
    }
}
