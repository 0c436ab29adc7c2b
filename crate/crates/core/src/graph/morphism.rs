use super::{EdgeIx, MultiGraph, VertexIx, Walk};
use crate::error::{Error, Result};

/// A graph morphism `φ: F → E` given by a vertex map and an edge map
/// that commute with source and range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    vertex_map: Vec<VertexIx>,
    edge_map: Vec<EdgeIx>,
}

impl GraphMorphism {
    /// Validates that the maps are total and commute with `s` and `r`.
    pub fn new(
        f: &MultiGraph,
        e: &MultiGraph,
        vertex_map: Vec<VertexIx>,
        edge_map: Vec<EdgeIx>,
    ) -> Result<Self> {
        if vertex_map.len() != f.vertex_count() || edge_map.len() != f.edge_count() {
            return Err(Error::InvalidMorphism("maps are not total".into()));
        }
        if let Some(v) = vertex_map.iter().find(|v| v.0 >= e.vertex_count()) {
            return Err(Error::InvalidMorphism(format!(
                "vertex index {} out of range",
                v.0
            )));
        }
        if let Some(x) = edge_map.iter().find(|x| x.0 >= e.edge_count()) {
            return Err(Error::InvalidMorphism(format!(
                "edge index {} out of range",
                x.0
            )));
        }
        for x in f.edges() {
            let y = edge_map[x.0];
            if vertex_map[f.source(x).0] != e.source(y) || vertex_map[f.range(x).0] != e.range(y) {
                return Err(Error::InvalidMorphism(format!(
                    "edge {} is not mapped compatibly with its endpoints",
                    f.edge_id(x)
                )));
            }
        }
        Ok(Self {
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(g: &MultiGraph) -> Self {
        Self {
            vertex_map: g.vertices().collect(),
            edge_map: g.edges().collect(),
        }
    }

    /// Builds a morphism from id pairs `(F-id, E-id)`.
    pub fn from_names<S: AsRef<str>>(
        f: &MultiGraph,
        e: &MultiGraph,
        vertex_pairs: &[(S, S)],
        edge_pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut vmap: Vec<Option<VertexIx>> = vec![None; f.vertex_count()];
        for (a, b) in vertex_pairs {
            let x = f.require_vertex(a.as_ref())?;
            let y = e.require_vertex(b.as_ref())?;
            if vmap[x.0].replace(y).is_some_and(|old| old != y) {
                return Err(Error::InvalidMorphism(format!(
                    "vertex {} mapped twice",
                    a.as_ref()
                )));
            }
        }
        let mut emap: Vec<Option<EdgeIx>> = vec![None; f.edge_count()];
        for (a, b) in edge_pairs {
            let x = f.require_edge(a.as_ref())?;
            let y = e.require_edge(b.as_ref())?;
            if emap[x.0].replace(y).is_some_and(|old| old != y) {
                return Err(Error::InvalidMorphism(format!(
                    "edge {} mapped twice",
                    a.as_ref()
                )));
            }
        }
        let vertex_map = vmap
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidMorphism(format!(
                        "vertex {} is unmapped",
                        f.vertex_id(VertexIx(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edge_map = emap
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::InvalidMorphism(format!("edge {} is unmapped", f.edge_id(EdgeIx(i))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f, e, vertex_map, edge_map)
    }

    /// Parses a map file of `vmap <F-vertex> <E-vertex>` and
    /// `emap <F-edge> <E-edge>` lines (`#` starts a comment).
    pub fn parse(text: &str, f: &MultiGraph, e: &MultiGraph) -> Result<Self> {
        let mut vpairs = Vec::new();
        let mut epairs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let tokens: Vec<&str> = raw
                .split_whitespace()
                .take_while(|t| !t.starts_with('#'))
                .collect();
            match tokens.as_slice() {
                [] => {}
                ["vmap", a, b] => vpairs.push((*a, *b)),
                ["emap", a, b] => epairs.push((*a, *b)),
                _ => {
                    return Err(Error::Syntax {
                        line: n + 1,
                        message:
                            "expected `vmap <F-vertex> <E-vertex>` or `emap <F-edge> <E-edge>`"
                                .into(),
                    })
                }
            }
        }
        Self::from_names(f, e, &vpairs, &epairs)
    }

    pub fn vertex(&self, v: VertexIx) -> VertexIx {
        self.vertex_map[v.0]
    }

    pub fn edge(&self, x: EdgeIx) -> EdgeIx {
        self.edge_map[x.0]
    }

    pub fn vertex_map(&self) -> &[VertexIx] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[EdgeIx] {
        &self.edge_map
    }

    /// Image of a walk in `F`; reduced walks may map to unreduced ones, so the
    /// image is reduced again.
    pub fn map_walk(&self, e: &MultiGraph, w: &Walk) -> Result<Walk> {
        let steps: Vec<_> = w
            .steps()
            .iter()
            .map(|s| super::SignedEdge {
                edge: self.edge(s.edge),
                direction: s.direction,
            })
            .collect();
        Walk::reduce(e, self.vertex(w.source()), &steps)
    }

    /// Serializes as a map file.
    pub fn to_text(&self, f: &MultiGraph, e: &MultiGraph) -> String {
        let mut out = String::new();
        for v in f.vertices() {
            out.push_str(&format!(
                "vmap {} {}\n",
                f.vertex_id(v),
                e.vertex_id(self.vertex(v))
            ));
        }
        for x in f.edges() {
            out.push_str(&format!(
                "emap {} {}\n",
                f.edge_id(x),
                e.edge_id(self.edge(x))
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn doubling_map_is_a_morphism() {
        let c3 = parse_graph(
            "vertex v0\nvertex v1\nvertex v2\nedge e0 v0 v1\nedge e1 v1 v2\nedge e2 v2 v0\n",
        )
        .unwrap();
        let mut text = String::new();
        for i in 0..6 {
            text.push_str(&format!("vertex w{i}\n"));
        }
        for i in 0..6 {
            text.push_str(&format!("edge f{i} w{i} w{}\n", (i + 1) % 6));
        }
        let c6 = parse_graph(&text).unwrap();
        let mut map = String::new();
        for i in 0..6 {
            map.push_str(&format!("vmap w{i} v{}\nemap f{i} e{}\n", i % 3, i % 3));
        }
        let p = GraphMorphism::parse(&map, &c6, &c3).unwrap();
        assert_eq!(
            GraphMorphism::parse(&p.to_text(&c6, &c3), &c6, &c3).unwrap(),
            p
        );
    }

    #[test]
    fn incompatible_edge_rejected() {
        let g = parse_graph("vertex a\nvertex b\nedge x a b\nedge y b a\n").unwrap();
        let err = GraphMorphism::parse("vmap a a\nvmap b b\nemap x y\nemap y y\n", &g, &g);
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn unmapped_vertex_rejected() {
        let g = parse_graph("vertex a\nvertex b\n").unwrap();
        assert!(GraphMorphism::parse("vmap a a\n", &g, &g).is_err());
    }
}
