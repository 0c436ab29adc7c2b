//! Reading graphs, labellings and maps from disk, with the path in every error.

use std::fmt;
use std::fs;
use std::path::Path;

use graphalg::graph::{parse_graph, GraphMorphism, MultiGraph, VertexIx};
use graphalg::group::{Group, Subgroup};
use graphalg::voltage::VoltageLabeling;

/// A usage or input problem; always exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<graphalg::Error> for Failure {
    fn from(e: graphalg::Error) -> Self {
        Failure(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn context<T>(path: &Path, r: graphalg::Result<T>) -> Result<T> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

pub fn graph(path: &Path) -> Result<MultiGraph> {
    context(path, parse_graph(&read(path)?))
}

pub fn group(spec: &str) -> Result<Group> {
    Ok(Group::parse(spec)?)
}

pub fn subgroup(group: &Group, spec: Option<&str>) -> Result<Subgroup> {
    Ok(match spec {
        Some(s) => Subgroup::parse(group, s)?,
        None => Subgroup::trivial(group)?,
    })
}

pub fn labels(path: &Path, g: &MultiGraph, group: &Group) -> Result<VoltageLabeling> {
    context(path, VoltageLabeling::parse(&read(path)?, g, group.clone()))
}

pub fn morphism(path: &Path, f: &MultiGraph, e: &MultiGraph) -> Result<GraphMorphism> {
    context(path, GraphMorphism::parse(&read(path)?, f, e))
}

/// Named vertex, or the first vertex when `id` is absent.
pub fn vertex(g: &MultiGraph, id: Option<&str>) -> Result<VertexIx> {
    match id {
        Some(id) => g
            .vertex(id)
            .ok_or_else(|| Failure(format!("unknown vertex {id}"))),
        None if g.is_empty() => Err(Failure("graph has no vertices".into())),
        None => Ok(VertexIx(0)),
    }
}

/// `a..b` with both ends inclusive.
pub fn window(spec: &str) -> Result<(i64, i64)> {
    let bad = || Failure(format!("invalid window {spec:?}: expected a..b"));
    let (a, b) = spec.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(window("0..6").unwrap(), (0, 6));
        assert_eq!(window("-2..-1").unwrap(), (-2, -1));
        assert!(window("3..1").is_err());
        assert!(window("3").is_err());
    }
}
