use super::MultiGraph;
use crate::error::{Error, Result};

const MAX_MULTIPLICITY: u64 = 100_000;

/// Parses the graph file format.
///
/// ```text
/// # comment
/// vertex <id>
/// edge <id> <src> <dst> [<multiplicity>|inf]
/// ```
///
/// A token starting with `#` begins a comment running to the end of the line.
/// Vertices must be declared before edges use them. A multiplicity `k > 1`
/// expands into edges `<id>#1 .. <id>#k`; `inf` keeps a single record carrying
/// the infinite marker.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut g = MultiGraph::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let at = |source: Error| Error::AtLine {
            line,
            source: Box::new(source),
        };
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        let syntax = |message: String| Error::Syntax { line, message };
        match tokens.as_slice() {
            [] => {}
            ["vertex", id] => {
                g.add_vertex(*id).map_err(at)?;
            }
            ["edge", id, src, dst, rest @ ..] => {
                let s = g
                    .vertex(src)
                    .ok_or_else(|| at(Error::UndeclaredVertex(src.to_string())))?;
                let r = g
                    .vertex(dst)
                    .ok_or_else(|| at(Error::UndeclaredVertex(dst.to_string())))?;
                match rest {
                    [] => {
                        g.add_edge(*id, s, r).map_err(at)?;
                    }
                    ["inf"] => {
                        g.add_infinite_edge(*id, s, r).map_err(at)?;
                    }
                    [m] => {
                        let m: u64 = m
                            .parse()
                            .map_err(|_| syntax(format!("invalid multiplicity {m:?}")))?;
                        if m == 0 || m > MAX_MULTIPLICITY {
                            return Err(syntax(format!(
                                "multiplicity must lie in 1..={MAX_MULTIPLICITY}, got {m}"
                            )));
                        }
                        if m == 1 {
                            g.add_edge(*id, s, r).map_err(at)?;
                        } else {
                            for k in 1..=m {
                                g.add_edge(format!("{id}#{k}"), s, r).map_err(at)?;
                            }
                        }
                    }
                    _ => return Err(syntax("trailing tokens after edge statement".into())),
                }
            }
            ["vertex", ..] => return Err(syntax("expected `vertex <id>`".into())),
            ["edge", ..] => {
                return Err(syntax(
                    "expected `edge <id> <src> <dst> [<multiplicity>|inf]`".into(),
                ))
            }
            [kw, ..] => return Err(syntax(format!("unknown statement {kw:?}"))),
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_loop_graph() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        let e = g.edge_by_id("e").unwrap();
        assert!(g.is_loop_edge(e));
    }

    #[test]
    fn multiplicity_expands() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w 2").unwrap();
        let ids: Vec<_> = g.edges().map(|e| g.edge_id(e).to_string()).collect();
        assert_eq!(ids, ["e#1", "e#2"]);
        let u = g.vertex("u").unwrap();
        let w = g.vertex("w").unwrap();
        assert!(g.edges().all(|e| g.source(e) == u && g.range(e) == w));
    }

    #[test]
    fn undeclared_vertex_is_reported() {
        let err = parse_graph("edge e u w").unwrap_err();
        assert_eq!(err.to_string(), "line 1: undeclared vertex u");
    }

    #[test]
    fn infinite_marker_stays_single_record() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w inf\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.edge(g.edge_by_id("e").unwrap()).infinite);
        assert!(g.require_row_finite().is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nvertex a   # trailing\nvertex b\nedge e#x a b\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_id(g.edges().next().unwrap()), "e#x");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph("vertex a\nvertex a\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: duplicate vertex id a");
        let err = parse_graph("vertex a\nedge e a a 0\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = parse_graph("node a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        let err = parse_graph("vertex a\nvertex b\nedge e a b\nedge e b a\n").unwrap_err();
        assert_eq!(err.to_string(), "line 4: duplicate edge id e");
    }

    #[test]
    fn serializer_round_trips() {
        let text = "vertex u\nvertex w\nedge e u w 3\nedge f w u inf\nedge l w w\n";
        let g = parse_graph(text).unwrap();
        let again = parse_graph(&g.to_text()).unwrap();
        assert_eq!(g, again);
    }
}
