//! Graph generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work on plain adjacency counts and never call into the
//! library's structure module.
#![allow(dead_code)]

use graphalg::graph::{MultiGraph, VertexIx};
use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds a graph on `n` vertices `v0..` from `(source, range)` pairs, edges `e0..`.
pub fn build(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    let mut g = MultiGraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for (k, &(s, r)) in edges.iter().enumerate() {
        g.add_edge(format!("e{k}"), VertexIx(s), VertexIx(r))
            .unwrap();
    }
    g
}

/// Every edge multiset of size `<= max_edges` over the ordered vertex pairs
/// of `1..=max_vertices` labelled vertices.
pub fn corpus(max_vertices: usize, max_edges: usize) -> Vec<MultiGraph> {
    fn extend(
        n: usize,
        pairs: &[(usize, usize)],
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        max_edges: usize,
        out: &mut Vec<MultiGraph>,
    ) {
        out.push(build(n, chosen));
        if chosen.len() == max_edges {
            return;
        }
        for i in from..pairs.len() {
            chosen.push(pairs[i]);
            extend(n, pairs, i, chosen, max_edges, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
        extend(n, &pairs, 0, &mut Vec::new(), max_edges, &mut out);
    }
    out
}

/// Copies of `g` with edge `k` replaced by an infinite-multiplicity record.
pub fn with_infinite_edge(g: &MultiGraph, k: usize) -> MultiGraph {
    let mut h = MultiGraph::new();
    for v in g.vertices() {
        h.add_vertex(g.vertex_id(v)).unwrap();
    }
    for e in g.edges() {
        let (s, r) = (g.source(e), g.range(e));
        if e.0 == k {
            h.add_infinite_edge(g.edge_id(e), s, r).unwrap();
        } else {
            h.add_edge(g.edge_id(e), s, r).unwrap();
        }
    }
    h
}

/// `counts[i][j]`: number of edges from `i` to `j`, with `u64::MAX` for the infinite marker.
pub fn counts(g: &MultiGraph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0u64; n]; n];
    for e in g.edges() {
        let cell = &mut a[g.source(e).0][g.range(e).0];
        *cell = if g.edge(e).infinite {
            u64::MAX
        } else {
            cell.saturating_add(1)
        };
    }
    a
}

/// Reflexive transitive closure by Floyd–Warshall.
pub fn reach(g: &MultiGraph) -> Vec<Vec<bool>> {
    let a = counts(g);
    let n = a.len();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || a[i][j] > 0).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Cofinality by enumerating lassos: a stem from any vertex followed by a
/// closed walk repeated forever, total length at most `|E⁰| + |E¹|`. Every
/// vertex must reach some vertex the lasso visits.
pub fn lasso_cofinal(g: &MultiGraph) -> bool {
    let a = counts(g);
    let n = a.len();
    let r = reach(g);
    let bound = n + g.edge_count();
    // state: (position, visited mask, anchor of the cycle or n for "still in stem", cycle length > 0)
    let mut best = std::collections::HashMap::new();
    let mut stack: Vec<(usize, u32, usize, bool, usize)> =
        (0..n).map(|w| (w, 1u32 << w, n, false, 0)).collect();
    while let Some((pos, mask, anchor, moved, len)) = stack.pop() {
        let key = (pos, mask, anchor, moved);
        if best.get(&key).is_some_and(|&l| l <= len) {
            continue;
        }
        best.insert(key, len);
        if anchor < n && moved && pos == anchor {
            // a complete lasso visiting `mask`
            let hit = |v: usize| (0..n).any(|x| mask >> x & 1 == 1 && r[v][x]);
            if !(0..n).all(hit) {
                return false;
            }
            continue;
        }
        if anchor == n {
            stack.push((pos, mask, pos, false, len));
        }
        if len == bound {
            continue;
        }
        for next in 0..n {
            if a[pos][next] > 0 {
                stack.push((next, mask | 1 << next, anchor, anchor < n || moved, len + 1));
            }
        }
    }
    true
}

/// Simple loops found by trying every ordered vertex sequence that starts at
/// its smallest vertex; each loop is weighted by the product of the edge
/// multiplicities along it. Returns the number of simple loops through each
/// vertex, capped at 2, with the infinite marker counting as 2.
pub fn simple_loop_counts(g: &MultiGraph) -> Vec<u64> {
    let a = counts(g);
    let n = a.len();
    let mut through = vec![0u64; n];
    fn walk(a: &[Vec<u64>], start: usize, seq: &mut Vec<usize>, weight: u64, through: &mut [u64]) {
        let last = *seq.last().unwrap();
        if a[last][start] > 0 {
            let w = weight.saturating_mul(a[last][start]);
            for &v in seq.iter() {
                through[v] = through[v].saturating_add(w);
            }
        }
        for next in start + 1..a.len() {
            if !seq.contains(&next) && a[last][next] > 0 {
                seq.push(next);
                walk(a, start, seq, weight.saturating_mul(a[last][next]), through);
                seq.pop();
            }
        }
    }
    for s in 0..n {
        walk(&a, s, &mut vec![s], 1, &mut through);
    }
    through.iter().map(|&c| c.min(2)).collect()
}

pub fn k_oracle(g: &MultiGraph) -> bool {
    !simple_loop_counts(g).contains(&1)
}

/// Every infinite emitter is reached from every vertex.
pub fn emitter_oracle(g: &MultiGraph) -> bool {
    let a = counts(g);
    let r = reach(g);
    let n = a.len();
    (0..n)
        .filter(|&w| a[w].contains(&u64::MAX))
        .all(|w| (0..n).all(|v| r[v][w]))
}

/// Gcd of the lengths of the simple loops through `v`.
pub fn simple_loop_gcd_through(g: &MultiGraph, v: usize) -> u64 {
    let a = counts(g);
    let n = a.len();
    let mut acc = 0u64;
    fn walk(a: &[Vec<u64>], v: usize, seq: &mut Vec<usize>, acc: &mut u64) {
        let last = *seq.last().unwrap();
        if a[last][v] > 0 {
            *acc = acc.gcd(&(seq.len() as u64));
        }
        for next in 0..a.len() {
            if !seq.contains(&next) && a[last][next] > 0 {
                seq.push(next);
                walk(a, v, seq, acc);
                seq.pop();
            }
        }
    }
    if n > 0 {
        walk(&a, v, &mut vec![v], &mut acc);
    }
    acc
}

/// Gcd of the lengths `k <= 4n` with a closed walk of length `k` at `v`,
/// from boolean matrix powers.
pub fn closed_walk_gcd(g: &MultiGraph, v: usize) -> u64 {
    let a = counts(g);
    let n = a.len();
    let mut row: Vec<bool> = (0..n).map(|j| j == v).collect();
    let mut acc = 0u64;
    for k in 1..=4 * n as u64 {
        row = (0..n)
            .map(|j| (0..n).any(|i| row[i] && a[i][j] > 0))
            .collect();
        if row[v] {
            acc = acc.gcd(&k);
        }
    }
    acc
}

pub fn strongly_connected(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let r = reach(g);
    let a = counts(g);
    (0..n).all(|i| (0..n).all(|j| r[i][j])) && (n > 1 || a[0][0] > 0)
}

/// Nontrivial strongly connected classes from the reachability matrix.
pub fn loop_classes(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let r = reach(g);
    let a = counts(g);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&j| r[i][j] && r[j][i]).collect();
        for &j in &class {
            seen[j] = true;
        }
        let nontrivial = class.len() > 1 || a[i][i] > 0;
        if nontrivial {
            out.push(class);
        }
    }
    out
}

/// Random graph with `1..=max_n` vertices and about `density · n²` edges.
pub fn random_graph(rng: &mut Rng8, max_n: usize, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    build(n, &edges)
}

/// Random strongly connected graph: a random closed tour through every
/// vertex plus random extra edges.
pub fn random_strongly_connected(rng: &mut Rng8, max_n: usize) -> MultiGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let extra = rng.gen_range(0..=n + 2);
        let mut edges = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        for i in 0..n {
            edges.push((order[i], order[(i + 1) % n]));
        }
        for _ in 0..extra {
            edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        // drop some tour edges so not every graph is Hamiltonian
        let drop = rng.gen_range(0..=n / 2);
        for _ in 0..drop {
            let k = rng.gen_range(0..edges.len());
            let candidate: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &e)| e)
                .collect();
            if strongly_connected(&build(n, &candidate)) {
                edges = candidate;
            }
        }
        let g = build(n, &edges);
        if strongly_connected(&g) {
            return g;
        }
    }
}

/// Random weakly connected graph with at least one edge.
pub fn random_connected(rng: &mut Rng8, max_n: usize, max_extra: usize) -> MultiGraph {
    let n = rng.gen_range(1..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    for _ in 0..rng.gen_range(1..=max_extra.max(1)) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    build(n, &edges)
}

/// Graphs on `1..=max_n` vertices with up to `max_e` edges.
pub fn arb_graph(
    max_n: usize,
    max_e: usize,
) -> impl proptest::strategy::Strategy<Value = MultiGraph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |e| build(n, &e))
    })
}

/// Weakly connected graphs: a random tree of edges plus extras.
pub fn arb_connected(
    max_n: usize,
    max_extra: usize,
) -> impl proptest::strategy::Strategy<Value = MultiGraph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(move |n| {
        let tree =
            proptest::collection::vec((any::<proptest::sample::Index>(), any::<bool>()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 1..=max_extra.max(1));
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree
                .iter()
                .enumerate()
                .map(|(i, (ix, fwd))| {
                    let (v, u) = (i + 1, ix.index(i + 1));
                    if *fwd {
                        (u, v)
                    } else {
                        (v, u)
                    }
                })
                .collect();
            edges.extend(extra);
            build(n, &edges)
        })
    })
}

/// A random walk of `len` steps from `start`, allowing immediate backtracking.
pub fn random_steps(
    rng: &mut Rng8,
    g: &MultiGraph,
    start: VertexIx,
    len: usize,
) -> Vec<graphalg::graph::SignedEdge> {
    use graphalg::graph::SignedEdge;
    let mut at = start;
    let mut steps = Vec::new();
    for _ in 0..len {
        let options: Vec<SignedEdge> = g
            .out_edges(at)
            .iter()
            .map(|&e| SignedEdge::forward(e))
            .chain(g.in_edges(at).iter().map(|&e| SignedEdge::reverse(e)))
            .collect();
        if options.is_empty() {
            break;
        }
        let s = options[rng.gen_range(0..options.len())];
        steps.push(s);
        at = s.range(g);
    }
    steps
}
