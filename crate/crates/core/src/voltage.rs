//! Edge labellings by group elements, T-voltages, local voltage groups and
//! cohomology of labellings.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{is_connected, EdgeIx, MultiGraph, SpanningTree, VertexIx, Walk};
use crate::group::{Group, GroupElement, Subgroup};

/// A labelling `c: E¹ → Γ`, extended to walks by `c(e⁻¹) = c(e)⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageLabeling {
    group: Group,
    labels: Vec<GroupElement>,
}

impl VoltageLabeling {
    pub fn new(g: &MultiGraph, group: Group, labels: Vec<GroupElement>) -> Result<Self> {
        g.require_row_finite()?;
        if labels.len() != g.edge_count() {
            let missing = g
                .edges()
                .nth(labels.len())
                .map(|e| g.edge_id(e).to_string());
            return Err(Error::MissingLabel(missing.unwrap_or_default()));
        }
        if let Some(x) = labels.iter().find(|x| !group.contains(x)) {
            return Err(Error::InvalidElement(group.format_element(x)));
        }
        Ok(Self { group, labels })
    }

    /// Every edge labelled by `x`.
    pub fn constant(g: &MultiGraph, group: Group, x: GroupElement) -> Result<Self> {
        let labels = vec![x; g.edge_count()];
        Self::new(g, group, labels)
    }

    /// `c ≡ 1` into the integers.
    pub fn ones(g: &MultiGraph) -> Result<Self> {
        Self::constant(g, Group::integers(), GroupElement::Int(1))
    }

    /// Parses `label <edge-id> <element>` lines; the element is the rest of
    /// the line up to a `#` comment.
    pub fn parse(text: &str, g: &MultiGraph, group: Group) -> Result<Self> {
        let mut labels: Vec<Option<GroupElement>> = vec![None; g.edge_count()];
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = || Error::Syntax {
                line,
                message: "expected `label <edge-id> <element>`".into(),
            };
            let rest = content.strip_prefix("label").ok_or_else(syntax)?;
            if !rest.starts_with(char::is_whitespace) {
                return Err(syntax());
            }
            let rest = rest.trim_start();
            let (id, element) = rest.split_once(char::is_whitespace).ok_or_else(syntax)?;
            let at = |source: Error| Error::AtLine {
                line,
                source: Box::new(source),
            };
            let e = g.require_edge(id).map_err(at)?;
            let x = group.parse_element(element).map_err(at)?;
            if labels[e.0].replace(x).is_some() {
                return Err(at(Error::DuplicateId {
                    kind: "label",
                    id: id.to_string(),
                }));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| Error::MissingLabel(g.edge_id(EdgeIx(i)).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, group, labels)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn get(&self, e: EdgeIx) -> &GroupElement {
        &self.labels[e.0]
    }

    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    /// `c(a) = c(a_1) ... c(a_n)`; the empty walk has voltage the identity.
    pub fn walk_voltage(&self, a: &Walk) -> Result<GroupElement> {
        let mut acc = self.group.identity();
        for s in a.steps() {
            let x = self
                .labels
                .get(s.edge.0)
                .ok_or_else(|| Error::UnknownEdge(format!("#{}", s.edge.0)))?;
            acc = if s.is_forward() {
                self.group.op(&acc, x)
            } else {
                self.group.op(&acc, &self.group.inv(x))
            };
        }
        Ok(acc)
    }

    pub fn to_text(&self, g: &MultiGraph) -> String {
        g.edges()
            .map(|e| {
                format!(
                    "label {} {}\n",
                    g.edge_id(e),
                    self.group.format_element(self.get(e))
                )
            })
            .collect()
    }

    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let labels: serde_json::Map<String, Value> = g
            .edges()
            .map(|e| {
                (
                    g.edge_id(e).to_string(),
                    self.group.element_json(self.get(e)),
                )
            })
            .collect();
        json!({"group": self.group.to_string(), "labels": labels})
    }
}

/// `c_{v,T}(e) = c(b_{s(e)} e b_{r(e)}⁻¹)`. Tree edges get the identity,
/// which is checked rather than assumed.
pub fn t_voltage(
    g: &MultiGraph,
    c: &VoltageLabeling,
    tree: &SpanningTree,
    v: VertexIx,
) -> Result<VoltageLabeling> {
    if tree.root() != v {
        return Err(Error::NotRoot(g.vertex_id(v).to_string()));
    }
    let group = c.group();
    let tree_voltage: Vec<GroupElement> = g
        .vertices()
        .map(|w| c.walk_voltage(tree.walk_to(w)))
        .collect::<Result<_>>()?;
    let labels: Vec<GroupElement> = g
        .edges()
        .map(|e| {
            let x = group.op(&tree_voltage[g.source(e).0], c.get(e));
            group.op(&x, &group.inv(&tree_voltage[g.range(e).0]))
        })
        .collect();
    for &e in tree.edges() {
        if !group.is_identity(&labels[e.0]) {
            return Err(Error::CertificateFailed(format!(
                "tree edge {} has nontrivial T-voltage",
                g.edge_id(e)
            )));
        }
    }
    VoltageLabeling::new(g, group.clone(), labels)
}

/// `Γ_v(c)`, with its generators `c_{v,T}(e)` for edges outside the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalVoltageGroup {
    pub base: VertexIx,
    pub subgroup: Subgroup,
    pub generators: Vec<(EdgeIx, GroupElement)>,
}

impl LocalVoltageGroup {
    pub fn to_json(&self, g: &MultiGraph, group: &Group) -> Value {
        json!({
            "base": g.vertex_id(self.base),
            "subgroup": self.subgroup.to_json(group),
            "generators": self.generators.iter().map(|(e, x)| json!({
                "edge": g.edge_id(*e),
                "voltage": group.element_json(x),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Local voltage group relative to a given spanning tree rooted at the base.
pub fn local_voltage_group_with_tree(
    g: &MultiGraph,
    c: &VoltageLabeling,
    tree: &SpanningTree,
) -> Result<LocalVoltageGroup> {
    let cvt = t_voltage(g, c, tree, tree.root())?;
    let generators: Vec<(EdgeIx, GroupElement)> = g
        .edges()
        .filter(|e| !tree.contains(*e))
        .map(|e| (e, cvt.get(e).clone()))
        .collect();
    let gens: Vec<GroupElement> = generators.iter().map(|(_, x)| x.clone()).collect();
    Ok(LocalVoltageGroup {
        base: tree.root(),
        subgroup: Subgroup::generated(c.group(), &gens)?,
        generators,
    })
}

/// `Γ_v(c) = { c(a) : a a reduced closed walk at v }`, generated by the
/// T-voltages of the non-tree edges of the breadth-first tree at `v`.
pub fn local_voltage_group(
    g: &MultiGraph,
    c: &VoltageLabeling,
    v: VertexIx,
) -> Result<LocalVoltageGroup> {
    let tree = SpanningTree::bfs(g, v)?;
    local_voltage_group_with_tree(g, c, &tree)
}

/// Outcome of a cohomology test, with the potential `b` when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomology {
    pub cohomologous: bool,
    /// `b` with `c1(e) b(r(e)) = b(s(e)) c2(e)` for every edge.
    pub witness: Option<Vec<GroupElement>>,
}

impl Cohomology {
    pub fn to_json(&self, g: &MultiGraph, group: &Group) -> Value {
        json!({
            "cohomologous": self.cohomologous,
            "witness": self.witness.as_ref().map(|b| g
                .vertices()
                .map(|v| (g.vertex_id(v).to_string(), group.element_json(&b[v.0])))
                .collect::<serde_json::Map<_, _>>()),
        })
    }
}

/// Checks `c1(e) b(r(e)) = b(s(e)) c2(e)` for every edge.
pub fn is_coboundary_witness(
    g: &MultiGraph,
    c1: &VoltageLabeling,
    c2: &VoltageLabeling,
    b: &[GroupElement],
) -> bool {
    let group = c1.group();
    g.edges()
        .all(|e| group.op(c1.get(e), &b[g.range(e).0]) == group.op(&b[g.source(e).0], c2.get(e)))
}

fn propagate(
    g: &MultiGraph,
    c1: &VoltageLabeling,
    c2: &VoltageLabeling,
    tree: &SpanningTree,
    order: &[VertexIx],
    root_value: GroupElement,
) -> Vec<GroupElement> {
    let group = c1.group();
    let mut b = vec![group.identity(); g.vertex_count()];
    b[tree.root().0] = root_value;
    for &w in order {
        let Some(step) = tree.parent(w) else { continue };
        let e = step.edge;
        b[w.0] = if step.is_forward() {
            // b(r) = c1(e)⁻¹ b(s) c2(e)
            group.op(
                &group.op(&group.inv(c1.get(e)), &b[g.source(e).0]),
                c2.get(e),
            )
        } else {
            // b(s) = c1(e) b(r) c2(e)⁻¹
            group.op(
                &group.op(c1.get(e), &b[g.range(e).0]),
                &group.inv(c2.get(e)),
            )
        };
    }
    b
}

/// Decides whether `c1 ~ c2`.
///
/// The potential is propagated along a spanning tree from `b(root) = 1` and
/// checked on the remaining edges. For abelian groups the root value cancels
/// out; for finite non-abelian groups every root value is tried.
pub fn are_cohomologous(
    g: &MultiGraph,
    c1: &VoltageLabeling,
    c2: &VoltageLabeling,
) -> Result<Cohomology> {
    if c1.group() != c2.group() {
        return Err(Error::GroupMismatch(format!(
            "{} vs {}",
            c1.group(),
            c2.group()
        )));
    }
    if c1.labels.len() != g.edge_count() || c2.labels.len() != g.edge_count() {
        return Err(Error::Precondition(
            "labellings belong to a different graph".into(),
        ));
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let group = c1.group();
    let tree = SpanningTree::bfs(g, VertexIx(0))?;
    // parents before children: order by tree-walk length
    let mut order: Vec<VertexIx> = g.vertices().collect();
    order.sort_by_key(|&w| tree.walk_to(w).len());
    let mut candidates = vec![group.identity()];
    if group.is_finite() && !group.is_abelian() {
        candidates.extend(group.elements()?.iter().skip(1).cloned());
    }
    for x in candidates {
        let b = propagate(g, c1, c2, &tree, &order, x);
        if is_coboundary_witness(g, c1, c2, &b) {
            return Ok(Cohomology {
                cohomologous: true,
                witness: Some(b),
            });
        }
    }
    Ok(Cohomology {
        cohomologous: false,
        witness: None,
    })
}

/// Conjugator `k` with `k Γ_v(c) k⁻¹ = Γ_w(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugation {
    pub conjugator: GroupElement,
    pub at_v: LocalVoltageGroup,
    pub at_w: LocalVoltageGroup,
}

/// The local groups at `v` and `w` are conjugate: for a walk `a: v → w`,
/// closed walks at `w` are `a⁻¹ γ a`, so `k = c(a)⁻¹` works. The result is
/// verified against independently computed local groups.
pub fn conjugate_local_groups(
    g: &MultiGraph,
    c: &VoltageLabeling,
    v: VertexIx,
    w: VertexIx,
) -> Result<Conjugation> {
    let tree = SpanningTree::bfs(g, v)?;
    let at_v = local_voltage_group_with_tree(g, c, &tree)?;
    let at_w = local_voltage_group(g, c, w)?;
    let group = c.group();
    let conjugator = group.inv(&c.walk_voltage(tree.walk_to(w))?);
    if at_v.subgroup.conjugate(group, &conjugator)? != at_w.subgroup {
        return Err(Error::CertificateFailed(
            "local voltage groups are not conjugate by the tree walk".into(),
        ));
    }
    Ok(Conjugation {
        conjugator,
        at_v,
        at_w,
    })
}
