//! Relative skew products `E ×_c (H\Γ)`, finite windows of `E ×_c Z`, and
//! the component structure of skew products.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{
    is_connected, is_strongly_connected, reachable_from, scc_partition, EdgeIx, GraphMorphism,
    MultiGraph, SpanningTree, VertexIx,
};
use crate::group::{Cardinal, CosetSpace, Group, GroupElement, GroupKind, Subgroup};
use crate::iso::is_bijective;
use crate::structure::{path_threshold, period};
use crate::voltage::{
    local_voltage_group, local_voltage_group_with_tree, t_voltage, LocalVoltageGroup,
    VoltageLabeling,
};

/// The product graph on `E⁰ × (H\Γ)` with `s(e, Hg) = (s(e), Hg)` and
/// `r(e, Hg) = (r(e), Hg·c(e))`.
///
/// Vertex `(v, i)` has index `v·k + i` and edge `(e, i)` index `e·k + i`,
/// where `k` is the number of cosets; ids are `<base-id>@<coset-label>`.
#[derive(Debug, Clone)]
pub struct SkewGraph {
    pub graph: MultiGraph,
    pub group: Group,
    pub space: CosetSpace,
    /// The projection `(x, Hg) ↦ x`.
    pub projection: GraphMorphism,
}

impl SkewGraph {
    pub fn cosets(&self) -> usize {
        self.space.len()
    }

    pub fn vertex(&self, v: VertexIx, coset: usize) -> VertexIx {
        VertexIx(v.0 * self.cosets() + coset)
    }

    pub fn edge(&self, e: EdgeIx, coset: usize) -> EdgeIx {
        EdgeIx(e.0 * self.cosets() + coset)
    }

    /// Base vertex and coset of a product vertex.
    pub fn split_vertex(&self, x: VertexIx) -> (VertexIx, usize) {
        (VertexIx(x.0 / self.cosets()), x.0 % self.cosets())
    }

    pub fn split_edge(&self, x: EdgeIx) -> (EdgeIx, usize) {
        (EdgeIx(x.0 / self.cosets()), x.0 % self.cosets())
    }

    /// Connected components of the product, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexIx>> {
        crate::graph::weak_components(&self.graph)
    }
}

/// Skew product over an explicit coset space.
pub fn skew_over(g: &MultiGraph, c: &VoltageLabeling, space: CosetSpace) -> Result<SkewGraph> {
    g.require_row_finite()?;
    let group = c.group().clone();
    let k = space.len();
    let mut graph = MultiGraph::new();
    for v in g.vertices() {
        for i in 0..k {
            graph.add_vertex(format!("{}@{}", g.vertex_id(v), space.label(&group, i)))?;
        }
    }
    for e in g.edges() {
        let (s, r) = (g.source(e), g.range(e));
        for i in 0..k {
            let j = space.act(&group, i, c.get(e));
            graph.add_edge(
                format!("{}@{}", g.edge_id(e), space.label(&group, i)),
                VertexIx(s.0 * k + i),
                VertexIx(r.0 * k + j),
            )?;
        }
    }
    let projection = GraphMorphism::new(
        &graph,
        g,
        graph.vertices().map(|x| VertexIx(x.0 / k)).collect(),
        graph.edges().map(|x| EdgeIx(x.0 / k)).collect(),
    )?;
    Ok(SkewGraph {
        graph,
        group,
        space,
        projection,
    })
}

/// `E ×_c (H\Γ)` for a subgroup with finitely many cosets.
pub fn relative_skew(g: &MultiGraph, c: &VoltageLabeling, h: &Subgroup) -> Result<SkewGraph> {
    let space = CosetSpace::new(c.group(), h)?;
    skew_over(g, c, space)
}

/// `E ×_c Γ` for finite `Γ`.
pub fn full_skew(g: &MultiGraph, c: &VoltageLabeling) -> Result<SkewGraph> {
    relative_skew(g, c, &Subgroup::trivial(c.group())?)
}

/// The finite piece of `E ×_c Z` on levels `n0..=n1`.
#[derive(Debug, Clone)]
pub struct ZWindow {
    pub n0: i64,
    pub n1: i64,
    pub graph: MultiGraph,
    /// Base vertex and level of every window vertex.
    pub vertex_labels: Vec<(VertexIx, i64)>,
    /// Base edge and source level of every window edge.
    pub edge_labels: Vec<(EdgeIx, i64)>,
    base_vertices: usize,
}

impl ZWindow {
    pub fn vertex(&self, v: VertexIx, level: i64) -> Option<VertexIx> {
        (self.n0..=self.n1)
            .contains(&level)
            .then(|| VertexIx((level - self.n0) as usize * self.base_vertices + v.0))
    }

    /// No directed loop in the window.
    pub fn is_acyclic(&self) -> bool {
        let scc = scc_partition(&self.graph);
        !scc.nontrivial.iter().any(|&b| b)
    }

    /// Every edge raises the level by exactly one.
    pub fn is_graded(&self) -> bool {
        self.graph.edges().all(|x| {
            let (_, ls) = self.vertex_labels[self.graph.source(x).0];
            let (_, lr) = self.vertex_labels[self.graph.range(x).0];
            lr == ls + 1
        })
    }
}

fn int_label(c: &VoltageLabeling, e: EdgeIx) -> Result<i64> {
    match c.get(e) {
        GroupElement::Int(x) if matches!(c.group().kind(), GroupKind::Integers) => Ok(*x),
        _ => Err(Error::GroupMismatch(format!(
            "expected an integer labelling, got {}",
            c.group()
        ))),
    }
}

/// Window `[n0, n1]` of `E ×_c Z`: vertices `(v, n)` and edges `(e, n)` from
/// `(s(e), n)` to `(r(e), n + c(e))` whenever both ends lie in the window.
pub fn z_window(g: &MultiGraph, c: &VoltageLabeling, n0: i64, n1: i64) -> Result<ZWindow> {
    g.require_row_finite()?;
    if n0 >= n1 {
        return Err(Error::Precondition(format!("empty window {n0}..{n1}")));
    }
    let k = g.vertex_count();
    let mut graph = MultiGraph::new();
    let mut vertex_labels = Vec::new();
    for n in n0..=n1 {
        for v in g.vertices() {
            graph.add_vertex(format!("{}@{}", g.vertex_id(v), n))?;
            vertex_labels.push((v, n));
        }
    }
    let mut edge_labels = Vec::new();
    for n in n0..=n1 {
        for e in g.edges() {
            let m = n + int_label(c, e)?;
            if (n0..=n1).contains(&m) {
                graph.add_edge(
                    format!("{}@{}", g.edge_id(e), n),
                    VertexIx((n - n0) as usize * k + g.source(e).0),
                    VertexIx((m - n0) as usize * k + g.range(e).0),
                )?;
                edge_labels.push((e, n));
            }
        }
    }
    Ok(ZWindow {
        n0,
        n1,
        graph,
        vertex_labels,
        edge_labels,
        base_vertices: k,
    })
}

/// Decides whether two vertices of `E ×_c Γ` lie in the same component.
///
/// With `b_x` the tree walk from the root, `(x, g)` and `(y, h)` are joined
/// iff `g⁻¹h` is the voltage of some walk `x → y`, i.e. iff
/// `c(b_x) g⁻¹ h c(b_y)⁻¹ ∈ Γ_root(c)`.
#[derive(Debug, Clone)]
pub struct ComponentPredicate {
    group: Group,
    local: LocalVoltageGroup,
    tree_voltage: Vec<GroupElement>,
}

impl ComponentPredicate {
    pub fn new(g: &MultiGraph, c: &VoltageLabeling) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let tree = SpanningTree::bfs(g, VertexIx(0))?;
        let local = local_voltage_group_with_tree(g, c, &tree)?;
        let tree_voltage = g
            .vertices()
            .map(|w| c.walk_voltage(tree.walk_to(w)))
            .collect::<Result<_>>()?;
        Ok(Self {
            group: c.group().clone(),
            local,
            tree_voltage,
        })
    }

    pub fn same(&self, x: VertexIx, gx: &GroupElement, y: VertexIx, gy: &GroupElement) -> bool {
        let grp = &self.group;
        let t = grp.op(&self.tree_voltage[x.0], &grp.inv(gx));
        let t = grp.op(&grp.op(&t, gy), &grp.inv(&self.tree_voltage[y.0]));
        self.local.subgroup.contains(grp, &t)
    }
}

/// Whether `(v, m)` and `(u, n)` lie in the same component of `E ×_c Γ`.
pub fn same_component(
    g: &MultiGraph,
    c: &VoltageLabeling,
    (v, m): (VertexIx, &GroupElement),
    (u, n): (VertexIx, &GroupElement),
) -> Result<bool> {
    Ok(ComponentPredicate::new(g, c)?.same(v, m, u, n))
}

/// Number of components of `E ×_c Γ`: the index `[Γ : Γ_v(c)]`.
pub fn component_count(g: &MultiGraph, c: &VoltageLabeling) -> Result<Cardinal> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    local_voltage_group(g, c, VertexIx(0))?
        .subgroup
        .index(c.group())
}

/// Model of the component of `(v, 1)` in `E ×_c Γ`.
#[derive(Debug, Clone)]
pub enum ComponentModel {
    /// `E ×_{c_{v,T}} Γ_v(c)` with the isomorphism `(x, γ) ↦ (x, γ c(b_x))`
    /// onto the component inside the full skew product.
    Finite {
        skew: SkewGraph,
        full: SkewGraph,
        phi: GraphMorphism,
        component: Vec<VertexIx>,
    },
    /// `Γ_v(c) = dZ`: the component is `E ×_{c'} Z` for `c' = c_{v,T} / d`.
    /// With `d = 0` the labels all vanish and the component is `E` itself.
    Integer {
        step: u64,
        relabelled: VoltageLabeling,
    },
}

#[derive(Debug, Clone)]
pub struct ComponentSkew {
    pub t_voltage: VoltageLabeling,
    pub local: LocalVoltageGroup,
    pub model: ComponentModel,
}

impl ComponentSkew {
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let group = self.t_voltage.group();
        let model = match &self.model {
            ComponentModel::Finite {
                skew, component, ..
            } => json!({
                "kind": "finite",
                "vertices": skew.graph.vertex_count(),
                "edges": skew.graph.edge_count(),
                "component_vertices": component.len(),
                "isomorphism_verified": true,
            }),
            ComponentModel::Integer { step, relabelled } => json!({
                "kind": "integer",
                "step": step,
                "relabelled": relabelled.to_json(g)["labels"],
            }),
        };
        json!({
            "t_voltage": self.t_voltage.to_json(g)["labels"],
            "local_group": self.local.to_json(g, group),
            "model": model,
        })
    }
}

/// Presents the component of `(v, 1)` in `E ×_c Γ` as a skew product over
/// the local voltage group, verifying the isomorphism when `Γ` is finite.
pub fn component_as_skew(
    g: &MultiGraph,
    c: &VoltageLabeling,
    tree: &SpanningTree,
    v: VertexIx,
) -> Result<ComponentSkew> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let group = c.group();
    let cvt = t_voltage(g, c, tree, v)?;
    let local = local_voltage_group_with_tree(g, c, tree)?;
    let model = match &local.subgroup {
        Subgroup::Multiples(d) if matches!(group.kind(), GroupKind::Integers) => {
            let labels = cvt
                .labels()
                .iter()
                .map(|x| match x {
                    GroupElement::Int(x) if *d == 0 => GroupElement::Int(*x),
                    GroupElement::Int(x) => GroupElement::Int(x / *d as i64),
                    GroupElement::Perm(_) => unreachable!("integer group"),
                })
                .collect();
            ComponentModel::Integer {
                step: *d,
                relabelled: VoltageLabeling::new(g, group.clone(), labels)?,
            }
        }
        sub => {
            let skew = skew_over(g, &cvt, CosetSpace::regular(group, sub)?)?;
            let full = full_skew(g, c)?;
            let tree_voltage: Vec<GroupElement> = g
                .vertices()
                .map(|w| c.walk_voltage(tree.walk_to(w)))
                .collect::<Result<_>>()?;
            let member = |i: usize| -> GroupElement {
                match &skew.space {
                    CosetSpace::Regular { members, .. } => {
                        group.elements().expect("finite")[members[i]].clone()
                    }
                    _ => unreachable!("regular space"),
                }
            };
            let vmap = skew
                .graph
                .vertices()
                .map(|x| {
                    let (w, i) = skew.split_vertex(x);
                    let target = group.op(&member(i), &tree_voltage[w.0]);
                    Ok(full.vertex(w, full.space.coset_of(group, &target)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let emap = skew
                .graph
                .edges()
                .map(|x| {
                    let (e, i) = skew.split_edge(x);
                    let target = group.op(&member(i), &tree_voltage[g.source(e).0]);
                    Ok(full.edge(e, full.space.coset_of(group, &target)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let phi = GraphMorphism::new(&skew.graph, &full.graph, vmap, emap)
                .map_err(|e| Error::CertificateFailed(e.to_string()))?;
            let start = full.vertex(v, full.space.coset_of(group, &group.identity())?);
            let component = crate::graph::weak_components(&full.graph)
                .into_iter()
                .find(|comp| comp.contains(&start))
                .expect("every vertex lies in a component");
            let mut image: Vec<VertexIx> = phi.vertex_map().to_vec();
            image.sort();
            let component_graph = full.graph.induced_subgraph(&component);
            let onto_component =
                image == component && skew.graph.edge_count() == component_graph.edge_count();
            let injective = {
                let mut edges: Vec<EdgeIx> = phi.edge_map().to_vec();
                edges.sort();
                edges.dedup();
                image.windows(2).all(|w| w[0] != w[1]) && edges.len() == skew.graph.edge_count()
            };
            if !onto_component || !injective {
                return Err(Error::CertificateFailed(
                    "component isomorphism does not verify".into(),
                ));
            }
            ComponentModel::Finite {
                skew,
                full,
                phi,
                component,
            }
        }
    };
    Ok(ComponentSkew {
        t_voltage: cvt,
        local,
        model,
    })
}

/// The map `(v, g) ↦ (v, g·b(v))`, `(e, g) ↦ (e, g·b(s(e)))` from
/// `E ×_{c1} Γ` to `E ×_{c2} Γ` given a potential `b` with
/// `c1(e) b(r(e)) = b(s(e)) c2(e)`; verified to be an isomorphism.
pub fn equivariant_isomorphism(
    g: &MultiGraph,
    c1: &VoltageLabeling,
    c2: &VoltageLabeling,
    b: &[GroupElement],
) -> Result<(SkewGraph, SkewGraph, GraphMorphism)> {
    let left = full_skew(g, c1)?;
    let right = full_skew(g, c2)?;
    let group = c1.group();
    let elements = group.elements()?;
    let rep = |space: &CosetSpace, i: usize| -> Result<GroupElement> {
        // trivial subgroup: the coset label is the element itself
        elements
            .iter()
            .find(|x| space.coset_of(group, x).ok() == Some(i))
            .cloned()
            .ok_or_else(|| Error::CertificateFailed("empty coset".into()))
    };
    let vmap = left
        .graph
        .vertices()
        .map(|x| {
            let (v, i) = left.split_vertex(x);
            let target = group.op(&rep(&left.space, i)?, &b[v.0]);
            Ok(right.vertex(v, right.space.coset_of(group, &target)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let emap = left
        .graph
        .edges()
        .map(|x| {
            let (e, i) = left.split_edge(x);
            let target = group.op(&rep(&left.space, i)?, &b[g.source(e).0]);
            Ok(right.edge(e, right.space.coset_of(group, &target)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = GraphMorphism::new(&left.graph, &right.graph, vmap, emap)
        .map_err(|e| Error::CertificateFailed(e.to_string()))?;
    if !is_bijective(&left.graph, &right.graph, &phi) {
        return Err(Error::CertificateFailed(
            "equivariant map is not bijective".into(),
        ));
    }
    Ok((left, right, phi))
}

/// Window certificate that components of `E ×_c Z` with `c ≡ 1` are cofinal.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ZCofinalCertificate {
    pub cofinal: bool,
    pub period: u64,
    pub max_threshold: u64,
    pub window: (i64, i64),
    pub sources_checked: usize,
    pub pairs_checked: usize,
}

/// For strongly connected `E` and `c ≡ 1`, every vertex `(x, m)` of the
/// window reaches every vertex `(y, n)` of its component with
/// `n - m >= (M + 1)·d + |E⁰| - 1`, where `M` bounds the path thresholds.
/// This is the finite shadow of the statement that each component is cofinal.
pub fn z_component_cofinal(g: &MultiGraph) -> Result<ZCofinalCertificate> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    g.require_row_finite()?;
    let n = g.vertex_count() as i64;
    let v = VertexIx(0);
    let rep = period(g, v);
    let d = rep.period as i64;
    let mut max_threshold = 0;
    for w in g.vertices() {
        max_threshold = max_threshold.max(path_threshold(g, v, w)?.threshold);
    }
    let gap = (max_threshold as i64 + 1) * d + n - 1;
    let last_source = (max_threshold as i64 + 1) * d;
    let len = 2 * (max_threshold as i64 + 1) * d + n;
    let c = VoltageLabeling::ones(g)?;
    let window = z_window(g, &c, 0, len)?;
    let pred = ComponentPredicate::new(g, &c)?;
    let mut cofinal = true;
    let mut sources_checked = 0;
    let mut pairs_checked = 0;
    for m in 0..=last_source {
        for x in g.vertices() {
            let from = window.vertex(x, m).expect("inside window");
            let reach = reachable_from(&window.graph, [from]);
            sources_checked += 1;
            for level in (m + gap)..=len {
                for y in g.vertices() {
                    if !pred.same(x, &GroupElement::Int(m), y, &GroupElement::Int(level)) {
                        continue;
                    }
                    pairs_checked += 1;
                    if !reach[window.vertex(y, level).expect("inside window").0] {
                        cofinal = false;
                    }
                }
            }
        }
    }
    Ok(ZCofinalCertificate {
        cofinal,
        period: rep.period,
        max_threshold,
        window: (0, len),
        sources_checked,
        pairs_checked,
    })
}
