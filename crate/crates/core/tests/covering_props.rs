mod common;

use common::*;
use graphalg::covering::{
    decompose, has_unique_lifting, is_regular, sample_unique_lifting, split_components,
    verify_covering, Decomposition,
};
use graphalg::graph::{EdgeIx, GraphMorphism, MultiGraph, SpanningTree, VertexIx};
use graphalg::group::{Group, Subgroup};
use graphalg::iso::{find_isomorphism, Colouring};
use graphalg::skew::relative_skew;
use graphalg::voltage::VoltageLabeling;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn bouquet(k: usize) -> MultiGraph {
    build(1, &vec![(0, 0); k])
}

/// Permutation voltage cover: vertices `(v, i)`, edges `(x, i): (s, i) → (r, π_x(i))`.
fn permutation_cover(e: &MultiGraph, perms: &[Vec<usize>]) -> (MultiGraph, GraphMorphism) {
    let k = perms.first().map_or(1, Vec::len);
    let pairs: Vec<(usize, usize)> = e
        .edges()
        .flat_map(|x| {
            let (s, r) = (e.source(x).0, e.range(x).0);
            (0..k).map(move |i| (s * k + i, r * k + perms[x.0][i]))
        })
        .collect();
    let f = build(e.vertex_count() * k, &pairs);
    let vmap = f.vertices().map(|u| VertexIx(u.0 / k)).collect();
    let emap = f.edges().map(|x| EdgeIx(x.0 / k)).collect();
    let p = GraphMorphism::new(&f, e, vmap, emap).unwrap();
    (f, p)
}

/// Checks every obligation of a decomposition of a connected covering.
fn check_decomposition(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
    tree: &SpanningTree,
    d: &Decomposition,
) -> Result<(), TestCaseError> {
    let rebuilt = find_isomorphism(
        &d.skew.graph,
        &Colouring::from_morphism(&d.skew.graph, &d.skew.projection),
        f,
        &Colouring::from_morphism(f, p),
    );
    prop_assert!(rebuilt.is_some());
    for x in e.edges().filter(|&x| tree.contains(x)) {
        prop_assert!(d.presentation.permutations[x.0].is_identity());
    }
    let mut seen = vec![0usize; f.vertex_count()];
    for t in &d.forest {
        prop_assert_eq!(t.over.len(), e.vertex_count());
        prop_assert_eq!(t.edges.len(), e.vertex_count() - 1);
        for (w, &u) in t.over.iter().enumerate() {
            prop_assert_eq!(p.vertex(u), VertexIx(w));
            seen[u.0] += 1;
        }
        let mut images: Vec<EdgeIx> = t.edges.iter().map(|&x| p.edge(x)).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images, tree.edges().iter().copied().collect::<Vec<_>>());
    }
    prop_assert!(seen.iter().all(|&c| c == 1));
    prop_assert_eq!(d.forest.len() * e.vertex_count(), f.vertex_count());
    Ok(())
}

proptest! {
    #[test]
    fn certificate_agrees_with_lifting(f in arb_graph(4, 6), k in 1usize..4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = bouquet(k);
        let emap = f.edges().map(|_| EdgeIx(r.gen_range(0..k))).collect();
        let p = GraphMorphism::new(&f, &e, vec![VertexIx(0); f.vertex_count()], emap).unwrap();
        let certified = verify_covering(&f, &e, &p).is_ok();
        prop_assert_eq!(certified, has_unique_lifting(&f, &e, &p, 3));
        if certified {
            prop_assert!(sample_unique_lifting(&f, &e, &p, 50, 6, seed));
        }
    }

    #[test]
    fn relative_skews_decompose_back(e in arb_connected(4, 2), s3 in any::<bool>(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let group = if s3 { Group::symmetric(3).unwrap() } else { Group::cyclic(4).unwrap() };
        let all = group.elements().unwrap();
        let xs = e.edges().map(|_| all[r.gen_range(0..all.len())].clone()).collect();
        let c = VoltageLabeling::new(&e, group.clone(), xs).unwrap();
        let h = Subgroup::generated(&group, &[all[r.gen_range(0..all.len())].clone()]).unwrap();
        let trivial = h == Subgroup::trivial(&group).unwrap();
        let s = relative_skew(&e, &c, &h).unwrap();
        let tree = SpanningTree::bfs(&e, VertexIx(r.gen_range(0..e.vertex_count()))).unwrap();
        for (f, p) in split_components(&s.graph, &e, &s.projection).unwrap() {
            let cov = verify_covering(&f, &e, &p).unwrap();
            let d = decompose(&f, &e, &cov, &tree).unwrap();
            check_decomposition(&f, &e, &p, &tree, &d)?;
            // components of a full skew product are regular
            if trivial {
                prop_assert!(is_regular(&d.presentation).unwrap());
            }
        }
    }

    #[test]
    fn permutation_covers_decompose_back(e in arb_connected(3, 3), k in 1usize..5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let perms: Vec<Vec<usize>> = e.edges().map(|_| {
            let mut images: Vec<usize> = (0..k).collect();
            images.shuffle(&mut r);
            images
        }).collect();
        let (f, p) = permutation_cover(&e, &perms);
        prop_assert!(verify_covering(&f, &e, &p).is_ok());
        let tree = SpanningTree::bfs(&e, VertexIx(0)).unwrap();
        let mut total = 0;
        for (part, q) in split_components(&f, &e, &p).unwrap() {
            let cov = verify_covering(&part, &e, &q).unwrap();
            let d = decompose(&part, &e, &cov, &tree).unwrap();
            check_decomposition(&part, &e, &q, &tree, &d)?;
            total += d.forest.len();
        }
        prop_assert_eq!(total, k);
    }
}
