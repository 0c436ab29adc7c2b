use std::collections::VecDeque;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, scc_partition, EdgeIx, MultiGraph, Path, VertexIx};

/// Period of a vertex and the residue classes of its strongly connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub base: VertexIx,
    /// Gcd of the lengths of all loops at `base`; zero when there is none.
    pub period: u64,
    /// `r_w` for every vertex `w` of the component of `base`; `None` elsewhere
    /// and everywhere when the period is zero.
    pub residues: Vec<Option<u64>>,
    /// Loops at `base` whose lengths have gcd equal to the period.
    pub witnesses: Vec<Path>,
}

impl PeriodReport {
    pub fn residue(&self, w: VertexIx) -> Option<u64> {
        self.residues[w.0]
    }

    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let residues: serde_json::Map<String, Value> = {
            let mut pairs: Vec<_> = g
                .vertices()
                .filter_map(|w| self.residues[w.0].map(|r| (g.vertex_id(w).to_string(), json!(r))))
                .collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            pairs.into_iter().collect()
        };
        json!({
            "base": g.vertex_id(self.base),
            "period": self.period,
            "residues": residues,
            "witnesses": self.witnesses.iter().map(|p| p.ids(g)).collect::<Vec<_>>(),
        })
    }
}

/// Breadth-first search inside one component, returning levels and the edge
/// used to reach each vertex.
fn levels_within(
    g: &MultiGraph,
    start: VertexIx,
    member: &[bool],
    forward: bool,
) -> (Vec<Option<u64>>, Vec<Option<EdgeIx>>) {
    let n = g.vertex_count();
    let mut level = vec![None; n];
    let mut via = vec![None; n];
    level[start.0] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let lu = level[u.0].unwrap();
        let edges = if forward {
            g.out_edges(u)
        } else {
            g.in_edges(u)
        };
        for &e in edges {
            let w = if forward { g.range(e) } else { g.source(e) };
            if member[w.0] && level[w.0].is_none() {
                level[w.0] = Some(lu + 1);
                via[w.0] = Some(e);
                queue.push_back(w);
            }
        }
    }
    (level, via)
}

/// Period of `v` from the gcd of breadth-first level defects in its component.
pub fn period(g: &MultiGraph, v: VertexIx) -> PeriodReport {
    let n = g.vertex_count();
    let scc = scc_partition(g);
    if !scc.on_loop(v) {
        return PeriodReport {
            base: v,
            period: 0,
            residues: vec![None; n],
            witnesses: Vec::new(),
        };
    }
    let member: Vec<bool> = g.vertices().map(|w| scc.same_class(v, w)).collect();
    let (level, parent) = levels_within(g, v, &member, true);
    let (back, next) = levels_within(g, v, &member, false);
    let internal: Vec<EdgeIx> = g
        .edges()
        .filter(|&e| member[g.source(e).0] && member[g.range(e).0])
        .collect();
    let mut d = 0u64;
    for &e in &internal {
        let lu = level[g.source(e).0].unwrap() as i64;
        let lw = level[g.range(e).0].unwrap() as i64;
        d = d.gcd(&((lu + 1 - lw).unsigned_abs()));
    }
    // every internal edge u -> w closes the loop (tree path to u) e (shortest path w -> v)
    let tree_path = |w: VertexIx| {
        let mut edges = Vec::new();
        let mut at = w;
        while let Some(e) = parent[at.0] {
            edges.push(e);
            at = g.source(e);
        }
        edges.reverse();
        edges
    };
    let return_path = |w: VertexIx| {
        let mut edges = Vec::new();
        let mut at = w;
        while let Some(e) = next[at.0] {
            edges.push(e);
            at = g.range(e);
        }
        edges
    };
    let mut witnesses = Vec::new();
    let mut acc = 0u64;
    for &e in &internal {
        let (u, w) = (g.source(e), g.range(e));
        let len = level[u.0].unwrap() + 1 + back[w.0].unwrap();
        if acc.gcd(&len) != acc {
            acc = acc.gcd(&len);
            let mut edges = tree_path(u);
            edges.push(e);
            edges.extend(return_path(w));
            witnesses.push(Path::new(v, edges));
        }
        if acc == d {
            break;
        }
    }
    debug_assert_eq!(acc, d);
    let residues = g.vertices().map(|w| level[w.0].map(|l| l % d)).collect();
    PeriodReport {
        base: v,
        period: d,
        residues,
        witnesses,
    }
}

/// Period of a strongly connected graph, based at its first vertex.
pub fn strong_period(g: &MultiGraph) -> Result<PeriodReport> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(period(g, VertexIx(0)))
}

/// Residue of `w` and the least `N` with paths `v -> w` of length `k·d + r_w`
/// for every `k >= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PathThreshold {
    pub period: u64,
    pub residue: u64,
    pub threshold: u64,
}

/// Finds the first `k >= k_min` starting a run of `window` consecutive
/// values with a path `v -> w` of length `k·d + r`.
///
/// The realizable `k` form a set closed under adding loop lengths at `w`
/// divided by `d`; the shortest such loop has at most `n / d` steps, so a run
/// of that length certifies every later `k`. The window `n·d + 1` dominates
/// it, and since any earlier run is shorter than the shortest loop, the
/// returned `k` is the exact threshold.
fn first_stable_run(
    g: &MultiGraph,
    v: VertexIx,
    w: VertexIx,
    d: u64,
    r: u64,
    k_min: u64,
) -> Result<u64> {
    let n = g.vertex_count() as u64;
    let window = n * d + 1;
    let k_cap = n * n + 2 * n + window + k_min + 2;
    let mut reach = vec![false; g.vertex_count()];
    reach[v.0] = true;
    let mut run_start: Option<u64> = None;
    let mut len = 0u64;
    loop {
        if len % d == r && len >= r {
            let k = (len - r) / d;
            if k >= k_min {
                if reach[w.0] {
                    let start = *run_start.get_or_insert(k);
                    if k + 1 - start >= window {
                        return Ok(start);
                    }
                } else {
                    run_start = None;
                }
            }
            if k > k_cap {
                return Err(Error::CertificateFailed(format!(
                    "no stable run of path lengths below k = {k_cap}"
                )));
            }
        }
        let mut next = vec![false; reach.len()];
        for e in g.edges() {
            if reach[g.source(e).0] {
                next[g.range(e).0] = true;
            }
        }
        reach = next;
        len += 1;
    }
}

/// Least `N(v)` such that `v` is the source of a loop of length `k·d` for
/// every `k >= N(v)`, with `k >= 1`.
pub fn eventual_loop_threshold(g: &MultiGraph, v: VertexIx) -> Result<u64> {
    let rep = strong_period(g)?;
    first_stable_run(g, v, v, rep.period, 0, 1)
}

/// Residue `r_w` relative to `v` and the least `N(w)` with paths `v -> w` of
/// length `k·d + r_w` for all `k >= N(w)`, with `k >= 0`.
pub fn path_threshold(g: &MultiGraph, v: VertexIx, w: VertexIx) -> Result<PathThreshold> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let rep = period(g, v);
    let d = rep.period;
    let r = rep.residue(w).expect("strongly connected");
    let threshold = first_stable_run(g, v, w, d, r, 0)?;
    Ok(PathThreshold {
        period: d,
        residue: r,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn c3() -> MultiGraph {
        parse_graph(
            "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v1\n",
        )
        .unwrap()
    }

    // loops of length 2 (v -> a -> v) and 3 (v -> b -> c -> v)
    fn p23() -> MultiGraph {
        parse_graph(
            "vertex v\nvertex a\nvertex b\nvertex c\n\
             edge x v a\nedge y a v\nedge p v b\nedge q b c\nedge s c v\n",
        )
        .unwrap()
    }

    #[test]
    fn c3_period_and_residues() {
        let g = c3();
        let rep = period(&g, VertexIx(0));
        assert_eq!(rep.period, 3);
        assert_eq!(rep.residues, vec![Some(0), Some(1), Some(2)]);
        assert_eq!(rep.witnesses.len(), 1);
        assert_eq!(rep.witnesses[0].len(), 3);
    }

    #[test]
    fn p23_is_aperiodic() {
        let g = p23();
        let rep = period(&g, VertexIx(0));
        assert_eq!(rep.period, 1);
        let lens: Vec<_> = rep.witnesses.iter().map(|p| p.len() as u64).collect();
        assert_eq!(lens.iter().fold(0, |a: u64, &b| a.gcd(&b)), 1);
        assert!(rep
            .witnesses
            .iter()
            .all(|p| p.is_valid(&g) && p.range(&g) == VertexIx(0)));
    }

    #[test]
    fn acyclic_vertex_has_period_zero() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w\n").unwrap();
        let rep = period(&g, VertexIx(0));
        assert_eq!(rep.period, 0);
        assert!(rep.residues.iter().all(Option::is_none));
    }

    #[test]
    fn loop_thresholds() {
        let g = parse_graph("vertex v\nedge e v v\n").unwrap();
        assert_eq!(eventual_loop_threshold(&g, VertexIx(0)).unwrap(), 1);
        assert_eq!(eventual_loop_threshold(&p23(), VertexIx(0)).unwrap(), 2);
        assert_eq!(eventual_loop_threshold(&c3(), VertexIx(0)).unwrap(), 1);
    }

    #[test]
    fn path_thresholds() {
        let g = c3();
        let t = path_threshold(&g, VertexIx(0), VertexIx(1)).unwrap();
        assert_eq!((t.residue, t.threshold), (1, 0));
        let t = path_threshold(&g, VertexIx(0), VertexIx(0)).unwrap();
        assert_eq!(t.residue, 0);
        // v -> a has lengths 1, 3, 4, 5, ...: the run from 3 on is stable
        let g = p23();
        let t = path_threshold(&g, VertexIx(0), VertexIx(1)).unwrap();
        assert_eq!((t.period, t.residue, t.threshold), (1, 0, 3));
    }

    #[test]
    fn thresholds_need_strong_connectivity() {
        let g = parse_graph("vertex u\nvertex w\nedge e u w\nedge l w w\n").unwrap();
        assert_eq!(
            eventual_loop_threshold(&g, VertexIx(1)),
            Err(Error::NotStronglyConnected)
        );
    }
}
