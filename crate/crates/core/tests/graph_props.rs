mod common;

use common::*;
use graphalg::graph::{parse_graph, SignedEdge, SpanningTree, VertexIx, Walk};
use proptest::prelude::*;

proptest! {
    #[test]
    fn reduce_is_idempotent(g in arb_connected(5, 5), seed in any::<u64>(), len in 0usize..12) {
        let mut r = rng(seed);
        let steps = random_steps(&mut r, &g, VertexIx(0), len);
        let once = Walk::reduce(&g, VertexIx(0), &steps).unwrap();
        let twice = Walk::reduce(&g, VertexIx(0), once.steps()).unwrap();
        prop_assert!(once.is_reduced());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn groupoid_laws(g in arb_connected(4, 5), seed in any::<u64>()) {
        let mut r = rng(seed);
        let reduce = |start: VertexIx, steps: &[SignedEdge]| Walk::reduce(&g, start, steps).unwrap();
        let a = reduce(VertexIx(0), &random_steps(&mut r, &g, VertexIx(0), 6));
        let b = reduce(a.range(), &random_steps(&mut r, &g, a.range(), 6));
        let c = reduce(b.range(), &random_steps(&mut r, &g, b.range(), 6));
        let left = a.concat(&b).unwrap().concat(&c).unwrap();
        let right = a.concat(&b.concat(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&Walk::empty(a.source()).concat(&a).unwrap(), &a);
        prop_assert_eq!(&a.concat(&Walk::empty(a.range())).unwrap(), &a);
        prop_assert_eq!(a.concat(&a.inverse()).unwrap(), Walk::empty(a.source()));
        prop_assert_eq!(a.inverse().concat(&a).unwrap(), Walk::empty(a.range()));
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn tree_walks_are_the_unique_reduced_tree_walks(g in arb_connected(6, 4), root in 0usize..6) {
        let root = VertexIx(root % g.vertex_count());
        let tree = SpanningTree::bfs(&g, root).unwrap();
        prop_assert_eq!(tree.edges().len(), g.vertex_count() - 1);
        // every reduced walk from the root inside the tree, by exhaustive search
        let mut found = vec![0usize; g.vertex_count()];
        let mut stack = vec![(root, None::<SignedEdge>, 0usize)];
        while let Some((at, last, depth)) = stack.pop() {
            found[at.0] += 1;
            if depth == g.vertex_count() {
                continue;
            }
            let options = g.out_edges(at).iter().map(|&e| SignedEdge::forward(e))
                .chain(g.in_edges(at).iter().map(|&e| SignedEdge::reverse(e)));
            for s in options {
                if tree.contains(s.edge) && last != Some(s.inverse()) {
                    stack.push((s.range(&g), Some(s), depth + 1));
                }
            }
        }
        for w in g.vertices() {
            let b = tree.walk_to(w);
            prop_assert!(b.is_reduced());
            prop_assert_eq!(b.source(), root);
            prop_assert_eq!(b.range(), w);
            prop_assert!(b.steps().iter().all(|s| tree.contains(s.edge)));
            prop_assert_eq!(found[w.0], 1);
        }
    }

    #[test]
    fn text_round_trip(g in arb_graph(5, 8)) {
        let text = g.to_text();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }
}
