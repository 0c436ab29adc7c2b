//! One function per subcommand. Each returns a [`Report`] whose JSON is the
//! machine-readable output and whose text is the `--text` rendering.

use std::fmt::Write as _;
use std::path::Path;

use graphalg::covering::{decompose, sample_unique_lifting, split_components, verify_covering};
use graphalg::graph::{
    is_connected, is_strongly_connected, scc_partition, weak_components, MultiGraph, SpanningTree,
};
use graphalg::group::Cardinal;
use graphalg::report::{
    af_core_simple, bratteli, crossed_product_report, csimple, BratteliDiagram,
};
use graphalg::skew::{component_count, relative_skew, z_window};
use graphalg::structure::{is_row_finite, period, saturated_closure, sinks, sources};
use graphalg::voltage::{are_cohomologous, local_voltage_group, t_voltage};
use graphalg::Error;
use serde_json::{json, Value};

use crate::input::{self, Failure, Result};

pub const DEFAULT_BRATTELI_LEVELS: usize = 3;

#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False for a negative verdict (exit code 1).
    pub positive: bool,
    pub dot: Option<String>,
}

impl Report {
    fn new(json: Value, text: String, positive: bool) -> Self {
        Report {
            json,
            text,
            positive,
            dot: None,
        }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn graph_summary(g: &MultiGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "row_finite": is_row_finite(g),
        "connected": !g.is_empty() && is_connected(g),
        "strongly_connected": is_strongly_connected(g),
        "sources": g.vertex_ids(&sources(g)),
        "sinks": g.vertex_ids(&sinks(g)),
        "infinite_edges": g.infinite_edges().map(|e| g.edge_id(e)).collect::<Vec<_>>(),
    })
}

/// Period report of every strongly connected component carrying a loop.
fn periods(g: &MultiGraph) -> Vec<(Vec<String>, u64, Value)> {
    scc_partition(g)
        .nontrivial_classes()
        .map(|(_, class)| {
            let rep = period(g, class[0]);
            (g.vertex_ids(class), rep.period, rep.to_json(g))
        })
        .collect()
}

fn bratteli_if_strong(g: &MultiGraph, levels: usize) -> Result<Option<BratteliDiagram>> {
    if g.is_empty() || !is_strongly_connected(g) || !is_row_finite(g) {
        return Ok(None);
    }
    Ok(Some(bratteli(g, graphalg::graph::VertexIx(0), levels)?))
}

pub fn analyze(path: &Path, cap: usize, levels: Option<usize>) -> Result<Report> {
    let g = input::graph(path)?;
    let simple = csimple(&g, cap)?;
    let core = af_core_simple(&g, cap);
    let components = periods(&g);
    let strong = !g.is_empty() && is_strongly_connected(&g) && is_row_finite(&g);
    let decomposition = if strong {
        Some(crossed_product_report(&g)?)
    } else {
        None
    };
    let diagram = bratteli_if_strong(&g, levels.unwrap_or(DEFAULT_BRATTELI_LEVELS))?;

    let mut json = json!({
        "graph": graph_summary(&g),
        "csimple": simple.to_json(&g),
        "af_core": core.to_json(&g),
        "period": {
            "strongly_connected": is_strongly_connected(&g),
            "components": components.iter().map(|(vs, _, rep)| json!({
                "vertices": vs,
                "report": rep,
            })).collect::<Vec<_>>(),
        },
        "decomposition": decomposition.as_ref().map(|d| d.to_json(&g)),
    });
    if let Some(b) = &diagram {
        json["bratteli"] = b.to_json(&g);
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "vertices: {}  edges: {}",
        g.vertex_count(),
        g.edge_count()
    );
    let _ = writeln!(text, "C*(E) simple: {}", yes(simple.simple));
    let _ = writeln!(text, "  cofinal: {}", yes(simple.cofinal.cofinal));
    let _ = writeln!(text, "  condition (K): {}", yes(simple.condition_k.holds));
    let _ = writeln!(
        text,
        "  infinite emitters reached: {}",
        yes(simple.infinite_emitters.holds)
    );
    let _ = writeln!(text, "AF core simple: {}", yes(core.af_core_simple));
    for (vs, d, _) in &components {
        let _ = writeln!(text, "period {d} on {{{}}}", vs.join(", "));
    }
    if let Some(d) = &decomposition {
        let _ = writeln!(text, "{}", d.statement());
    }
    Ok(Report::new(json, text, simple.simple).with_dot(g.to_dot()))
}

pub fn period_cmd(path: &Path, base: Option<&str>) -> Result<Report> {
    let g = input::graph(path)?;
    let v = input::vertex(&g, base)?;
    let rep = period(&g, v);
    let mut json = rep.to_json(&g);
    json["strongly_connected"] = json!(is_strongly_connected(&g));
    let mut text = format!("period at {}: {}\n", g.vertex_id(v), rep.period);
    for w in g.vertices() {
        if let Some(r) = rep.residue(w) {
            let _ = writeln!(text, "  {} -> residue {r}", g.vertex_id(w));
        }
    }
    Ok(Report::new(json, text, true).with_dot(g.to_dot()))
}

pub fn closure(path: &Path, set: &str) -> Result<Report> {
    let g = input::graph(path)?;
    let x = set
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|id| input::vertex(&g, Some(id)))
        .collect::<Result<Vec<_>>>()?;
    if x.is_empty() {
        return Err(Failure("--set needs at least one vertex".into()));
    }
    let sigma = saturated_closure(&g, &x);
    let proper = sigma.saturated.len() < g.vertex_count();
    let mut json = sigma.to_json(&g);
    json["proper"] = json!(proper);
    let text = format!(
        "hereditary: {{{}}}\nsaturated: {{{}}}\nproper: {}\n",
        g.vertex_ids(&sigma.hereditary).join(", "),
        g.vertex_ids(&sigma.saturated).join(", "),
        yes(proper)
    );
    Ok(Report::new(json, text, true).with_dot(g.to_dot()))
}

pub struct SkewArgs<'a> {
    pub group: &'a str,
    pub labels: &'a Path,
    pub subgroup: Option<&'a str>,
    pub window: Option<&'a str>,
    pub components: bool,
}

fn component_list(g: &MultiGraph) -> Vec<Vec<String>> {
    weak_components(g).iter().map(|c| g.vertex_ids(c)).collect()
}

pub fn skew(path: &Path, args: &SkewArgs) -> Result<Report> {
    let g = input::graph(path)?;
    let group = input::group(args.group)?;
    let c = input::labels(args.labels, &g, &group)?;
    let product = match args.window {
        Some(w) => {
            if group.is_finite() {
                return Err(Failure("--window needs --group Z".into()));
            }
            if args.subgroup.is_some() {
                return Err(Failure("--window and --subgroup are exclusive".into()));
            }
            let (a, b) = input::window(w)?;
            let win = z_window(&g, &c, a, b)?;
            let json = json!({
                "kind": "window",
                "levels": [a, b],
                "acyclic": win.is_acyclic(),
                "graded": win.is_graded(),
            });
            (win.graph, json)
        }
        None => {
            let h = input::subgroup(&group, args.subgroup)?;
            let s = relative_skew(&g, &c, &h).map_err(|e| match e {
                Error::InfiniteCosetSpace => Failure(
                    "the product is infinite: pass --window a..b or a finite-index --subgroup"
                        .into(),
                ),
                other => other.into(),
            })?;
            let json = json!({
                "kind": "relative",
                "group": group.to_string(),
                "subgroup": h.to_json(&group),
                "cosets": s.cosets(),
            });
            (s.graph, json)
        }
    };
    let (graph, mut json) = product;
    json["graph"] = json!(graph.to_text());
    json["vertices"] = json!(graph.vertex_count());
    json["edges"] = json!(graph.edge_count());
    let mut text = graph.to_text();
    if args.components {
        let comps = component_list(&graph);
        // the prediction covers the full product of a connected base
        let predicted = if args.window.is_none()
            && args.subgroup.is_none()
            && !g.is_empty()
            && is_connected(&g)
        {
            Some(component_count(&g, &c)?)
        } else {
            None
        };
        let local = if !g.is_empty() && is_connected(&g) {
            Some(local_voltage_group(&g, &c, graphalg::graph::VertexIx(0))?.to_json(&g, &group))
        } else {
            None
        };
        let _ = writeln!(text, "# {} components", comps.len());
        for comp in &comps {
            let _ = writeln!(text, "#   {{{}}}", comp.join(", "));
        }
        json["components"] = json!({
            "count": comps.len(),
            "predicted": predicted.map(Cardinal::to_json),
            "local_group": local,
            "members": comps,
        });
    }
    Ok(Report::new(json, text, true).with_dot(graph.to_dot()))
}

pub fn voltage(path: &Path, group: &str, labels: &Path, base: Option<&str>) -> Result<Report> {
    let g = input::graph(path)?;
    let group = input::group(group)?;
    let c = input::labels(labels, &g, &group)?;
    let v = input::vertex(&g, base)?;
    let tree = SpanningTree::bfs(&g, v)?;
    let cvt = t_voltage(&g, &c, &tree, v)?;
    let local = local_voltage_group(&g, &c, v)?;
    let count = component_count(&g, &c)?;
    let json = json!({
        "group": group.to_string(),
        "base": g.vertex_id(v),
        "tree": tree.edges().iter().map(|&e| g.edge_id(e)).collect::<Vec<_>>(),
        "t_voltage": cvt.to_json(&g)["labels"],
        "local_group": local.to_json(&g, &group),
        "components": count.to_json(),
    });
    let text = format!(
        "{}local group at {}: {}\ncomponents of the skew product: {count}\n",
        cvt.to_text(&g),
        g.vertex_id(v),
        local.subgroup.describe(&group),
    );
    Ok(Report::new(json, text, true).with_dot(g.to_dot()))
}

pub fn cohomologous(path: &Path, group: &str, labels1: &Path, labels2: &Path) -> Result<Report> {
    let g = input::graph(path)?;
    let group = input::group(group)?;
    let c1 = input::labels(labels1, &g, &group)?;
    let c2 = input::labels(labels2, &g, &group)?;
    let decided = are_cohomologous(&g, &c1, &c2)?;
    let json = decided.to_json(&g, &group);
    let mut text = format!("cohomologous: {}\n", yes(decided.cohomologous));
    if let Some(b) = &decided.witness {
        for v in g.vertices() {
            let _ = writeln!(
                text,
                "  b({}) = {}",
                g.vertex_id(v),
                group.format_element(&b[v.0])
            );
        }
    }
    Ok(Report::new(json, text, decided.cohomologous).with_dot(g.to_dot()))
}

fn not_covering(e: Error) -> Result<Report> {
    match e {
        Error::NotCovering { .. } => {
            let msg = e.to_string();
            Ok(Report::new(
                json!({"covering": false, "failure": msg}),
                format!("not a covering: {msg}\n"),
                false,
            ))
        }
        other => Err(other.into()),
    }
}

pub fn cover_verify(f_path: &Path, e_path: &Path, map: &Path) -> Result<Report> {
    let f = input::graph(f_path)?;
    let e = input::graph(e_path)?;
    let p = input::morphism(map, &f, &e)?;
    let cov = match verify_covering(&f, &e, &p) {
        Ok(cov) => cov,
        Err(err) => return not_covering(err),
    };
    let fibers: serde_json::Map<String, Value> = e
        .vertices()
        .map(|v| {
            (
                e.vertex_id(v).to_string(),
                json!(f.vertex_ids(&cov.fiber(v))),
            )
        })
        .collect();
    let sizes: Vec<usize> = e.vertices().map(|v| cov.fiber(v).len()).collect();
    let degree = (connected(&e) && sizes.windows(2).all(|w| w[0] == w[1]))
        .then(|| sizes.first().copied())
        .flatten();
    let sampled = sample_unique_lifting(&f, &e, &p, 256, 8, 0);
    let json = json!({
        "covering": true,
        "failure": null,
        "fibers": fibers,
        "degree": degree,
        "sampled_unique_lifting": sampled,
    });
    let text = format!(
        "covering: yes\ndegree: {}\nsampled unique lifting: {}\n",
        degree.map_or("varies".to_string(), |d| d.to_string()),
        yes(sampled)
    );
    Ok(Report::new(json, text, true))
}

fn connected(g: &MultiGraph) -> bool {
    !g.is_empty() && is_connected(g)
}

pub fn cover_decompose(
    f_path: &Path,
    e_path: &Path,
    map: &Path,
    base: Option<&str>,
    per_component: bool,
) -> Result<Report> {
    let f = input::graph(f_path)?;
    let e = input::graph(e_path)?;
    let p = input::morphism(map, &f, &e)?;
    if let Err(err) = verify_covering(&f, &e, &p) {
        return not_covering(err);
    }
    if !connected(&e) {
        return Err(Failure(format!(
            "{}: the base graph is not connected",
            e_path.display()
        )));
    }
    let tree = SpanningTree::bfs(&e, input::vertex(&e, base)?)?;
    let parts = if connected(&f) {
        vec![(f.clone(), p.clone())]
    } else if per_component {
        split_components(&f, &e, &p)?
    } else {
        return Err(Failure(format!(
            "{}: the covering graph is not connected; pass --per-component",
            f_path.display()
        )));
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut dot = String::new();
    for (part, q) in &parts {
        let cov = verify_covering(part, &e, q)?;
        let d = decompose(part, &e, &cov, &tree)?;
        let report = d.to_json(part, &e)?;
        let _ = writeln!(
            text,
            "fiber over {}: {{{}}}  group: {}  regular: {}",
            e.vertex_id(tree.root()),
            part.vertex_ids(&d.presentation.fiber).join(", "),
            d.presentation.group()?,
            report["regular"].as_bool().map_or("unknown", yes),
        );
        for x in e.edges() {
            let _ = writeln!(
                text,
                "  {} -> {}",
                e.edge_id(x),
                d.presentation.permutations[x.0]
            );
        }
        dot.push_str(&d.skew.graph.to_dot());
        reports.push(report);
    }
    let json = if per_component {
        json!({"covering": true, "components": reports})
    } else {
        let mut one = reports.pop().expect("one component");
        one["covering"] = json!(true);
        one
    };
    Ok(Report::new(json, text, true).with_dot(dot))
}

pub fn afcore(path: &Path, cap: usize, levels: Option<usize>) -> Result<Report> {
    let g = input::graph(path)?;
    let verdict = af_core_simple(&g, cap);
    let mut json = verdict.to_json(&g);
    let strong = !g.is_empty() && is_strongly_connected(&g) && is_row_finite(&g);
    json["decomposition"] = match strong {
        true => crossed_product_report(&g)?.to_json(&g),
        false => Value::Null,
    };
    let mut text = format!("AF core simple: {}\n", yes(verdict.af_core_simple));
    if let Some(d) = verdict.period {
        let _ = writeln!(
            text,
            "period of the cofinal strongly connected subgraph: {d}"
        );
    }
    let mut report_dot = g.to_dot();
    if let Some(levels) = levels {
        if !strong {
            return Err(Failure(
                "--bratteli needs a strongly connected row-finite graph".into(),
            ));
        }
        let b = bratteli(&g, graphalg::graph::VertexIx(0), levels)?;
        json["bratteli"] = b.to_json(&g);
        let _ = writeln!(
            text,
            "bratteli levels: {} vertices each, period {}",
            b.vertices.len(),
            b.period
        );
        report_dot = b.to_dot(&g);
    }
    Ok(Report::new(json, text, verdict.af_core_simple).with_dot(report_dot))
}
