//! Covering maps of graphs: verification by star bijections, walk lifting,
//! lifted spanning forests, and the presentation of a finite connected
//! covering as a relative skew product.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result, StarSide};
use crate::graph::{
    is_connected, weak_components, EdgeIx, GraphMorphism, MultiGraph, SignedEdge, SpanningTree,
    VertexIx, Walk,
};
use crate::group::{CosetSpace, Group, GroupElement, Permutation, Subgroup};
use crate::iso::is_bijective;
use crate::skew::{skew_over, SkewGraph};
use crate::voltage::VoltageLabeling;

/// A graph morphism `p: F → E` certified to be a covering map, with the
/// inverse star bijections used for lifting.
#[derive(Debug, Clone)]
pub struct CoveringMorphism {
    p: GraphMorphism,
    /// For each vertex `u` of `F`: edge of `E` leaving `p(u)` ↦ its lift leaving `u`.
    out_lift: Vec<HashMap<EdgeIx, EdgeIx>>,
    /// For each vertex `u` of `F`: edge of `E` entering `p(u)` ↦ its lift entering `u`.
    in_lift: Vec<HashMap<EdgeIx, EdgeIx>>,
}

/// Checks that `p` maps every in-star and out-star of `F` bijectively.
pub fn verify_covering(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
) -> Result<CoveringMorphism> {
    f.require_row_finite()?;
    e.require_row_finite()?;
    let mut out_lift = Vec::with_capacity(f.vertex_count());
    let mut in_lift = Vec::with_capacity(f.vertex_count());
    for u in f.vertices() {
        let image = p.vertex(u);
        for (side, star, target) in [
            (StarSide::Out, f.out_edges(u), e.out_edges(image)),
            (StarSide::In, f.in_edges(u), e.in_edges(image)),
        ] {
            let mut table = HashMap::with_capacity(star.len());
            let injective = star.iter().all(|&x| table.insert(p.edge(x), x).is_none());
            if !injective || table.len() != target.len() {
                return Err(Error::NotCovering {
                    vertex: f.vertex_id(u).to_string(),
                    side,
                });
            }
            match side {
                StarSide::Out => out_lift.push(table),
                StarSide::In => in_lift.push(table),
            }
        }
    }
    Ok(CoveringMorphism {
        p: p.clone(),
        out_lift,
        in_lift,
    })
}

/// Number of walks in `F` starting at `u` that map onto the step sequence `steps`.
pub fn lift_count(f: &MultiGraph, p: &GraphMorphism, u: VertexIx, steps: &[SignedEdge]) -> usize {
    let Some((first, rest)) = steps.split_first() else {
        return 1;
    };
    let candidates: Vec<(EdgeIx, VertexIx)> = if first.is_forward() {
        f.out_edges(u)
            .iter()
            .filter(|&&x| p.edge(x) == first.edge)
            .map(|&x| (x, f.range(x)))
            .collect()
    } else {
        f.in_edges(u)
            .iter()
            .filter(|&&x| p.edge(x) == first.edge)
            .map(|&x| (x, f.source(x)))
            .collect()
    };
    candidates
        .into_iter()
        .map(|(_, w)| lift_count(f, p, w, rest))
        .sum()
}

/// Checks that every reduced walk of length `1..=max_len` in `E` lifts
/// uniquely from every vertex of `F` over its source.
pub fn has_unique_lifting(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
    max_len: usize,
) -> bool {
    fn extend(
        f: &MultiGraph,
        e: &MultiGraph,
        p: &GraphMorphism,
        u: VertexIx,
        at: VertexIx,
        steps: &mut Vec<SignedEdge>,
        max_len: usize,
    ) -> bool {
        if !steps.is_empty() && lift_count(f, p, u, steps) != 1 {
            return false;
        }
        if steps.len() == max_len {
            return true;
        }
        let options: Vec<SignedEdge> = e
            .out_edges(at)
            .iter()
            .map(|&x| SignedEdge::forward(x))
            .chain(e.in_edges(at).iter().map(|&x| SignedEdge::reverse(x)))
            .collect();
        for s in options {
            if steps.last() == Some(&s.inverse()) {
                continue;
            }
            steps.push(s);
            let ok = extend(f, e, p, u, s.range(e), steps, max_len);
            steps.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    f.vertices()
        .all(|u| extend(f, e, p, u, p.vertex(u), &mut Vec::new(), max_len))
}

/// Samples random reduced walks in `E` and checks that each lifts uniquely
/// from a random vertex of `F` over its source.
pub fn sample_unique_lifting(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> bool {
    if f.is_empty() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u = VertexIx(rng.gen_range(0..f.vertex_count()));
        let mut at = p.vertex(u);
        let mut steps: Vec<SignedEdge> = Vec::new();
        let len = rng.gen_range(1..=max_len.max(1));
        for _ in 0..len {
            let options: Vec<SignedEdge> = e
                .out_edges(at)
                .iter()
                .map(|&x| SignedEdge::forward(x))
                .chain(e.in_edges(at).iter().map(|&x| SignedEdge::reverse(x)))
                .filter(|s| steps.last() != Some(&s.inverse()))
                .collect();
            let Some(&s) = options.choose(&mut rng) else {
                break;
            };
            steps.push(s);
            at = s.range(e);
        }
        if !steps.is_empty() && lift_count(f, p, u, &steps) != 1 {
            return false;
        }
    }
    true
}

impl CoveringMorphism {
    pub fn morphism(&self) -> &GraphMorphism {
        &self.p
    }

    /// The vertices of `F` over `v`, in index order.
    pub fn fiber(&self, v: VertexIx) -> Vec<VertexIx> {
        self.p
            .vertex_map()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == v)
            .map(|(i, _)| VertexIx(i))
            .collect()
    }

    fn lift_step(&self, f: &MultiGraph, u: VertexIx, s: SignedEdge) -> (EdgeIx, VertexIx) {
        if s.is_forward() {
            let x = self.out_lift[u.0][&s.edge];
            (x, f.range(x))
        } else {
            let x = self.in_lift[u.0][&s.edge];
            (x, f.source(x))
        }
    }

    /// The unique walk in `F` from `u` mapping onto `a`; it is reduced when `a` is.
    pub fn lift_walk(&self, f: &MultiGraph, a: &Walk, u: VertexIx) -> Result<Walk> {
        if self.p.vertex(u) != a.source() {
            return Err(Error::Precondition(format!(
                "{} does not lie over the source of the walk",
                f.vertex_id(u)
            )));
        }
        let mut at = u;
        let mut steps = Vec::with_capacity(a.len());
        for &s in a.steps() {
            let (x, next) = self.lift_step(f, at, s);
            steps.push(SignedEdge {
                edge: x,
                direction: s.direction,
            });
            at = next;
        }
        Walk::reduce(f, u, &steps)
    }

    /// Lifts of the tree `T`, one from each point over its root.
    pub fn lift_forest(
        &self,
        f: &MultiGraph,
        e: &MultiGraph,
        tree: &SpanningTree,
    ) -> Result<Vec<LiftedTree>> {
        if !is_connected(f) || !is_connected(e) {
            return Err(Error::NotConnected);
        }
        let mut owner = vec![usize::MAX; f.vertex_count()];
        let mut forest = Vec::new();
        for (i, root) in self.fiber(tree.root()).into_iter().enumerate() {
            let mut over = Vec::with_capacity(e.vertex_count());
            let mut edges = BTreeSet::new();
            for w in e.vertices() {
                let lifted = self.lift_walk(f, tree.walk_to(w), root)?;
                edges.extend(lifted.steps().iter().map(|s| s.edge));
                let end = lifted.range();
                if owner[end.0] != usize::MAX {
                    return Err(Error::CertificateFailed(format!(
                        "lifted trees meet at {}",
                        f.vertex_id(end)
                    )));
                }
                owner[end.0] = i;
                over.push(end);
            }
            forest.push(LiftedTree { root, over, edges });
        }
        if let Some(u) = f.vertices().find(|u| owner[u.0] == usize::MAX) {
            return Err(Error::CertificateFailed(format!(
                "{} is not covered by the lifted forest",
                f.vertex_id(u)
            )));
        }
        Ok(forest)
    }
}

/// One tree of a lifted spanning forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTree {
    pub root: VertexIx,
    /// The vertex of this tree over each vertex of `E`.
    pub over: Vec<VertexIx>,
    pub edges: BTreeSet<EdgeIx>,
}

/// Monodromy data of a covering: the fiber over `v` and the permutation of
/// it induced by each edge of `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyPresentation {
    pub base: VertexIx,
    pub tree: SpanningTree,
    /// Vertices of `F` over `base`; the base point is index 0.
    pub fiber: Vec<VertexIx>,
    /// `π_e` on fiber indices, one per edge of `E`.
    pub permutations: Vec<Permutation>,
}

impl MonodromyPresentation {
    /// The permutation group generated by the `π_e`.
    pub fn group(&self) -> Result<Group> {
        let mut gens: Vec<Permutation> = self
            .permutations
            .iter()
            .filter(|p| !p.is_identity())
            .cloned()
            .collect();
        gens.sort();
        gens.dedup();
        Group::perm(self.fiber.len(), gens)
    }

    /// `c(e) = π_e` as a labelling of `E`.
    pub fn labelling(&self, e: &MultiGraph) -> Result<VoltageLabeling> {
        let group = self.group()?;
        let labels = self
            .permutations
            .iter()
            .map(|p| GroupElement::Perm(p.clone()))
            .collect();
        VoltageLabeling::new(e, group, labels)
    }

    /// `E ×_c (H\G)` with `H` the stabilizer of the base point, realized on
    /// the fiber points.
    pub fn rebuild(&self, e: &MultiGraph) -> Result<SkewGraph> {
        skew_over(
            e,
            &self.labelling(e)?,
            CosetSpace::PointAction {
                points: self.fiber.len(),
            },
        )
    }

    pub fn to_json(&self, f: &MultiGraph, e: &MultiGraph) -> Value {
        let perms: serde_json::Map<String, Value> = e
            .edges()
            .map(|x| {
                (
                    e.edge_id(x).to_string(),
                    json!(self.permutations[x.0].to_string()),
                )
            })
            .collect();
        json!({
            "base": e.vertex_id(self.base),
            "tree": self.tree.edges().iter().map(|&x| e.edge_id(x)).collect::<Vec<_>>(),
            "fiber": self.fiber.iter().map(|&u| f.vertex_id(u)).collect::<Vec<_>>(),
            "base_point": f.vertex_id(self.fiber[0]),
            "permutations": perms,
        })
    }
}

/// True iff the stabilizer of the base point is normal in the monodromy group.
pub fn is_regular(m: &MonodromyPresentation) -> Result<bool> {
    let group = m.group()?;
    let stab: Vec<GroupElement> = group
        .elements()?
        .iter()
        .filter(|x| matches!(x, GroupElement::Perm(p) if p.apply(0) == 0))
        .cloned()
        .collect();
    Subgroup::generated(&group, &stab)?.is_normal(&group)
}

/// A covering presented as a relative skew product, with the verified
/// isomorphism `φ: F → E ×_c (H\G)` commuting with the projections.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub presentation: MonodromyPresentation,
    pub skew: SkewGraph,
    pub phi: GraphMorphism,
    pub forest: Vec<LiftedTree>,
}

impl Decomposition {
    pub fn to_json(&self, f: &MultiGraph, e: &MultiGraph) -> Result<Value> {
        let group = self.presentation.group()?;
        Ok(json!({
            "presentation": self.presentation.to_json(f, e),
            "group": group.to_string(),
            "group_order": group.order().map(|o| o.to_json()).unwrap_or(Value::Null),
            "regular": is_regular(&self.presentation).ok(),
            "isomorphism": f.vertices().map(|u| json!([
                f.vertex_id(u),
                self.skew.graph.vertex_id(self.phi.vertex(u)),
            ])).collect::<Vec<_>>(),
        }))
    }
}

/// Presents a connected covering `p: F → E` as `E ×_c (H\G)`.
///
/// `π_e(j)` is the fiber index where the lift of `b_{s(e)} e b_{r(e)}⁻¹`
/// from fiber point `j` ends; `G = <π_e>` and `H` is the stabilizer of
/// fiber point 0, whose cosets are the fiber points. A vertex `u` in the
/// lifted tree through fiber point `i` maps to `(p(u), i)`, and an edge `f`
/// to `(p(f), i)` with `i` the tree of `s(f)`.
pub fn decompose(
    f: &MultiGraph,
    e: &MultiGraph,
    cov: &CoveringMorphism,
    tree: &SpanningTree,
) -> Result<Decomposition> {
    let forest = cov.lift_forest(f, e, tree)?;
    let v = tree.root();
    let fiber: Vec<VertexIx> = forest.iter().map(|t| t.root).collect();
    let k = fiber.len();
    let mut tree_of = vec![0; f.vertex_count()];
    for (i, t) in forest.iter().enumerate() {
        for &u in &t.over {
            tree_of[u.0] = i;
        }
    }
    let mut permutations = Vec::with_capacity(e.edge_count());
    for x in e.edges() {
        let loop_walk = tree
            .walk_to(e.source(x))
            .concat(&Walk::reduce(e, e.source(x), &[SignedEdge::forward(x)])?)?
            .concat(&tree.walk_to(e.range(x)).inverse())?;
        let images = fiber
            .iter()
            .map(|&u| Ok(tree_of[cov.lift_walk(f, &loop_walk, u)?.range().0]))
            .collect::<Result<Vec<_>>>()?;
        let pi = Permutation::from_images(images)?;
        if tree.contains(x) && !pi.is_identity() {
            return Err(Error::CertificateFailed(format!(
                "tree edge {} permutes the fiber",
                e.edge_id(x)
            )));
        }
        permutations.push(pi);
    }
    // transitivity: the orbit of the base point is the whole fiber
    let mut orbit = vec![false; k];
    orbit[0] = true;
    let mut stack = vec![0];
    while let Some(j) = stack.pop() {
        for pi in &permutations {
            for x in [pi.apply(j), pi.inverse().apply(j)] {
                if !orbit[x] {
                    orbit[x] = true;
                    stack.push(x);
                }
            }
        }
    }
    if orbit.iter().any(|&b| !b) {
        return Err(Error::CertificateFailed(
            "monodromy is not transitive".into(),
        ));
    }
    let presentation = MonodromyPresentation {
        base: v,
        tree: tree.clone(),
        fiber,
        permutations,
    };
    let skew = presentation.rebuild(e)?;
    let p = cov.morphism();
    let vmap = f
        .vertices()
        .map(|u| skew.vertex(p.vertex(u), tree_of[u.0]))
        .collect();
    let emap = f
        .edges()
        .map(|x| skew.edge(p.edge(x), tree_of[f.source(x).0]))
        .collect();
    let phi = GraphMorphism::new(f, &skew.graph, vmap, emap)
        .map_err(|err| Error::CertificateFailed(err.to_string()))?;
    let commutes = f
        .vertices()
        .all(|u| skew.projection.vertex(phi.vertex(u)) == p.vertex(u))
        && f.edges()
            .all(|x| skew.projection.edge(phi.edge(x)) == p.edge(x));
    if !commutes || !is_bijective(f, &skew.graph, &phi) {
        return Err(Error::CertificateFailed(
            "fiber isomorphism does not verify".into(),
        ));
    }
    Ok(Decomposition {
        presentation,
        skew,
        phi,
        forest,
    })
}

/// Restricts a morphism to one connected component of its domain.
pub fn restrict_to_component(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
    component: &[VertexIx],
) -> Result<(MultiGraph, GraphMorphism)> {
    let sub = f.induced_subgraph(component);
    let vmap = sub
        .vertices()
        .map(|u| p.vertex(f.vertex(sub.vertex_id(u)).expect("same ids")))
        .collect();
    let emap = sub
        .edges()
        .map(|x| p.edge(f.edge_by_id(sub.edge_id(x)).expect("same ids")))
        .collect();
    let q = GraphMorphism::new(&sub, e, vmap, emap)?;
    Ok((sub, q))
}

/// Components of `F` with the restricted morphisms.
pub fn split_components(
    f: &MultiGraph,
    e: &MultiGraph,
    p: &GraphMorphism,
) -> Result<Vec<(MultiGraph, GraphMorphism)>> {
    weak_components(f)
        .iter()
        .map(|c| restrict_to_component(f, e, p, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::group::Subgroup;
    use crate::iso::{find_isomorphism, Colouring};
    use crate::skew::relative_skew;

    fn cycle(prefix: &str, edge: &str, n: usize) -> MultiGraph {
        let mut text = String::new();
        for i in 0..n {
            text.push_str(&format!("vertex {prefix}{i}\n"));
        }
        for i in 0..n {
            text.push_str(&format!(
                "edge {edge}{i} {prefix}{i} {prefix}{}\n",
                (i + 1) % n
            ));
        }
        parse_graph(&text).unwrap()
    }

    fn doubling() -> (MultiGraph, MultiGraph, GraphMorphism) {
        let c6 = cycle("w", "f", 6);
        let c3 = cycle("v", "e", 3);
        let vmap = c6.vertices().map(|u| VertexIx(u.0 % 3)).collect();
        let emap = c6.edges().map(|x| EdgeIx(x.0 % 3)).collect();
        let p = GraphMorphism::new(&c6, &c3, vmap, emap).unwrap();
        (c6, c3, p)
    }

    #[test]
    fn identity_is_a_covering() {
        let g = cycle("v", "e", 3);
        let p = GraphMorphism::identity(&g);
        let cov = verify_covering(&g, &g, &p).unwrap();
        let tree = SpanningTree::bfs(&g, VertexIx(0)).unwrap();
        let d = decompose(&g, &g, &cov, &tree).unwrap();
        assert!(d
            .presentation
            .permutations
            .iter()
            .all(Permutation::is_identity));
        assert_eq!(
            d.presentation.group().unwrap().order().unwrap().finite(),
            Some(1)
        );
        assert!(is_regular(&d.presentation).unwrap());
        assert_eq!(d.forest.len(), 1);
    }

    #[test]
    fn doubling_map() {
        let (c6, c3, p) = doubling();
        let cov = verify_covering(&c6, &c3, &p).unwrap();
        assert_eq!(cov.fiber(VertexIx(0)).len(), 2);
        assert!(has_unique_lifting(&c6, &c3, &p, 4));
        assert!(sample_unique_lifting(&c6, &c3, &p, 200, 8, 7));
        // the full loop from w0 ends at the other point over v0
        let steps: Vec<_> = c3.edges().map(SignedEdge::forward).collect();
        let full = Walk::reduce(&c3, VertexIx(0), &steps).unwrap();
        let lifted = cov.lift_walk(&c6, &full, VertexIx(0)).unwrap();
        assert_eq!(lifted.range(), VertexIx(3));
        let back = full.concat(&full.inverse()).unwrap();
        assert!(cov.lift_walk(&c6, &back, VertexIx(0)).unwrap().is_empty());
        let tree = SpanningTree::bfs(&c3, VertexIx(0)).unwrap();
        let forest = cov.lift_forest(&c6, &c3, &tree).unwrap();
        assert_eq!(forest.len(), 2);
        assert!(forest
            .iter()
            .all(|t| t.over.len() == 3 && t.edges.len() == 2));
        let d = decompose(&c6, &c3, &cov, &tree).unwrap();
        let swap = Permutation::parse("(1 2)", 2).unwrap();
        assert_eq!(d.presentation.permutations[2], swap);
        assert!(is_regular(&d.presentation).unwrap());
    }

    #[test]
    fn collapse_is_not_a_covering() {
        let c3 = cycle("v", "e", 3);
        let one = parse_graph("vertex v\nedge e v v\n").unwrap();
        let p = GraphMorphism::new(&c3, &one, vec![VertexIx(0); 3], vec![EdgeIx(0); 3]).unwrap();
        assert!(verify_covering(&c3, &one, &p).is_ok());
        // a double edge onto a single loop fails at the out-star
        let fat = parse_graph("vertex a\nedge x a a\nedge y a a\n").unwrap();
        let q = GraphMorphism::new(&fat, &one, vec![VertexIx(0)], vec![EdgeIx(0); 2]).unwrap();
        assert_eq!(
            verify_covering(&fat, &one, &q).unwrap_err(),
            Error::NotCovering {
                vertex: "a".into(),
                side: StarSide::Out
            }
        );
        assert!(!has_unique_lifting(&fat, &one, &q, 1));
    }

    #[test]
    fn figure_eight_double_cover() {
        let fig8 = parse_graph("vertex v\nedge e v v\nedge f v v\n").unwrap();
        let z = Group::integers();
        let c = VoltageLabeling::new(&fig8, z, vec![GroupElement::Int(0), GroupElement::Int(1)])
            .unwrap();
        let s = relative_skew(&fig8, &c, &Subgroup::Multiples(2)).unwrap();
        let cov = verify_covering(&s.graph, &fig8, &s.projection).unwrap();
        let tree = SpanningTree::bfs(&fig8, VertexIx(0)).unwrap();
        let forest = cov.lift_forest(&s.graph, &fig8, &tree).unwrap();
        assert_eq!(forest.len(), 2);
        assert!(forest
            .iter()
            .all(|t| t.over.len() == 1 && t.edges.is_empty()));
    }

    #[test]
    fn three_fold_cover_with_s3_monodromy_is_not_regular() {
        let fig8 = parse_graph("vertex v\nedge e v v\nedge f v v\n").unwrap();
        let s3 = Group::symmetric(3).unwrap();
        let c = VoltageLabeling::new(
            &fig8,
            s3.clone(),
            vec![
                s3.parse_element("(1 2)").unwrap(),
                s3.parse_element("(1 3)").unwrap(),
            ],
        )
        .unwrap();
        let h = Subgroup::generated(&s3, &[s3.parse_element("(2 3)").unwrap()]).unwrap();
        let s = relative_skew(&fig8, &c, &h).unwrap();
        assert_eq!(s.graph.vertex_count(), 3);
        let cov = verify_covering(&s.graph, &fig8, &s.projection).unwrap();
        let tree = SpanningTree::bfs(&fig8, VertexIx(0)).unwrap();
        let d = decompose(&s.graph, &fig8, &cov, &tree).unwrap();
        assert_eq!(
            d.presentation.group().unwrap().order().unwrap().finite(),
            Some(6)
        );
        assert!(!is_regular(&d.presentation).unwrap());
    }

    #[test]
    fn round_trip_through_skew() {
        let c3 = cycle("v", "e", 3);
        let c = VoltageLabeling::ones(&c3).unwrap();
        let s = relative_skew(&c3, &c, &Subgroup::Multiples(2)).unwrap();
        let cov = verify_covering(&s.graph, &c3, &s.projection).unwrap();
        let tree = SpanningTree::bfs(&c3, VertexIx(0)).unwrap();
        let d = decompose(&s.graph, &c3, &cov, &tree).unwrap();
        let rebuilt = d.presentation.rebuild(&c3).unwrap();
        let iso = find_isomorphism(
            &rebuilt.graph,
            &Colouring::from_morphism(&rebuilt.graph, &rebuilt.projection),
            &s.graph,
            &Colouring::from_morphism(&s.graph, &s.projection),
        );
        assert!(iso.is_some());
    }

    #[test]
    fn per_component_split() {
        let c3 = cycle("v", "e", 3);
        let c = VoltageLabeling::ones(&c3).unwrap();
        let s = relative_skew(&c3, &c, &Subgroup::Multiples(3)).unwrap();
        let tree = SpanningTree::bfs(&c3, VertexIx(0)).unwrap();
        let cov = verify_covering(&s.graph, &c3, &s.projection).unwrap();
        assert!(matches!(
            decompose(&s.graph, &c3, &cov, &tree),
            Err(Error::NotConnected)
        ));
        let parts = split_components(&s.graph, &c3, &s.projection).unwrap();
        assert_eq!(parts.len(), 3);
        for (sub, q) in parts {
            let cov = verify_covering(&sub, &c3, &q).unwrap();
            let d = decompose(&sub, &c3, &cov, &tree).unwrap();
            assert_eq!(d.presentation.fiber.len(), 1);
        }
    }
}
