use crate::graph::MultiGraph;

/// Square boolean matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl BoolMatrix {
    /// `A[u][w]` is set when some edge runs from `u` to `w`.
    pub fn adjacency(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let mut cells = vec![false; n * n];
        for e in g.edges() {
            cells[g.source(e).0 * n + g.range(e).0] = true;
        }
        Self { n, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut cells = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    for j in 0..n {
                        cells[i * n + j] |= other.get(k, j);
                    }
                }
            }
        }
        Self { n, cells }
    }

    pub fn all_positive(&self) -> bool {
        self.cells.iter().all(|&b| b)
    }
}

/// `(n-1)² + 1`, the largest exponent a primitive `n × n` matrix can need.
pub fn wielandt_bound(n: usize) -> usize {
    (n.saturating_sub(1)).pow(2) + 1
}

/// Smallest `k <= max_k` with every entry of `A^k` positive.
pub fn first_positive_power(g: &MultiGraph, max_k: usize) -> Option<usize> {
    if g.is_empty() {
        return None;
    }
    let a = BoolMatrix::adjacency(g);
    let mut power = a.clone();
    for k in 1..=max_k {
        if power.all_positive() {
            return Some(k);
        }
        power = power.mul(&a);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn c3_is_never_positive() {
        let g = parse_graph(
            "vertex v1\nvertex v2\nvertex v3\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v1\n",
        )
        .unwrap();
        assert_eq!(first_positive_power(&g, 50), None);
    }

    #[test]
    fn wielandt_graph_attains_the_bound() {
        // n-cycle plus one chord closing an (n-1)-cycle
        let g = parse_graph(
            "vertex a\nvertex b\nvertex c\nedge x a b\nedge y b c\nedge z c a\nedge w c b\n",
        )
        .unwrap();
        assert_eq!(
            first_positive_power(&g, wielandt_bound(3)),
            Some(wielandt_bound(3))
        );
    }
}
