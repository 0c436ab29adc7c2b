use std::fmt::Write as _;

use super::{EdgeIx, MultiGraph, VertexIx};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

/// An edge traversed forwards (`e`) or backwards (`e^-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedEdge {
    pub edge: EdgeIx,
    pub direction: Direction,
}

impl SignedEdge {
    pub fn forward(edge: EdgeIx) -> Self {
        Self {
            edge,
            direction: Direction::Forward,
        }
    }

    pub fn reverse(edge: EdgeIx) -> Self {
        Self {
            edge,
            direction: Direction::Reverse,
        }
    }

    pub fn inverse(self) -> Self {
        let direction = match self.direction {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        };
        Self { direction, ..self }
    }

    pub fn is_forward(self) -> bool {
        self.direction == Direction::Forward
    }

    pub fn source(self, g: &MultiGraph) -> VertexIx {
        match self.direction {
            Direction::Forward => g.source(self.edge),
            Direction::Reverse => g.range(self.edge),
        }
    }

    pub fn range(self, g: &MultiGraph) -> VertexIx {
        match self.direction {
            Direction::Forward => g.range(self.edge),
            Direction::Reverse => g.source(self.edge),
        }
    }
}

/// A reduced walk: an element of the fundamental groupoid.
///
/// The empty walk at `v` is the unit at `v`; it is the only walk whose
/// source cannot be read off its edges, so both endpoints are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    source: VertexIx,
    range: VertexIx,
    steps: Vec<SignedEdge>,
}

impl Walk {
    pub fn empty(v: VertexIx) -> Self {
        Self {
            source: v,
            range: v,
            steps: Vec::new(),
        }
    }

    /// Cancels every `a a^-1` in a composable sequence starting at `start`.
    pub fn reduce(g: &MultiGraph, start: VertexIx, steps: &[SignedEdge]) -> Result<Self> {
        if start.0 >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", start.0)));
        }
        let mut at = start;
        let mut stack: Vec<SignedEdge> = Vec::with_capacity(steps.len());
        for (i, &step) in steps.iter().enumerate() {
            if step.edge.0 >= g.edge_count() || step.source(g) != at {
                return Err(Error::NotComposable { step: i });
            }
            at = step.range(g);
            if stack.last() == Some(&step.inverse()) {
                stack.pop();
            } else {
                stack.push(step);
            }
        }
        Ok(Self {
            source: start,
            range: at,
            steps: stack,
        })
    }

    /// The walk following a directed path.
    pub fn from_path(g: &MultiGraph, path: &Path) -> Result<Self> {
        let steps: Vec<_> = path.edges.iter().map(|&e| SignedEdge::forward(e)).collect();
        Self::reduce(g, path.source, &steps)
    }

    pub fn source(&self) -> VertexIx {
        self.source
    }

    pub fn range(&self) -> VertexIx {
        self.range
    }

    pub fn steps(&self) -> &[SignedEdge] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.range
    }

    pub fn is_reduced(&self) -> bool {
        self.steps.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// True when every step is traversed forwards.
    pub fn is_path(&self) -> bool {
        self.steps.iter().all(|s| s.is_forward())
    }

    /// Groupoid composition `self · other`: concatenation followed by cancellation.
    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.range != other.source {
            return Err(Error::NotComposable {
                step: self.steps.len(),
            });
        }
        let mut steps = self.steps.clone();
        let mut rest = other.steps.as_slice();
        while let (Some(&last), Some(&first)) = (steps.last(), rest.first()) {
            if last.inverse() != first {
                break;
            }
            steps.pop();
            rest = &rest[1..];
        }
        steps.extend_from_slice(rest);
        Ok(Walk {
            source: self.source,
            range: other.range,
            steps,
        })
    }

    pub fn inverse(&self) -> Walk {
        Walk {
            source: self.range,
            range: self.source,
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    pub fn display(&self, g: &MultiGraph) -> String {
        if self.steps.is_empty() {
            return format!("[] @ {}", g.vertex_id(self.source));
        }
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(g.edge_id(s.edge));
            if !s.is_forward() {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// A directed path: a source vertex and a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: VertexIx,
    pub edges: Vec<EdgeIx>,
}

impl Path {
    pub fn new(source: VertexIx, edges: Vec<EdgeIx>) -> Self {
        Self { source, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &MultiGraph) -> VertexIx {
        self.edges.last().map_or(self.source, |&e| g.range(e))
    }

    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        let mut at = self.source;
        for &e in &self.edges {
            if g.source(e) != at {
                return false;
            }
            at = g.range(e);
        }
        true
    }

    pub fn ids(&self, g: &MultiGraph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| g.edge_id(e).to_string())
            .collect()
    }

    pub fn display(&self, g: &MultiGraph) -> String {
        let mut out = g.vertex_id(self.source).to_string();
        for &e in &self.edges {
            let _ = write!(out, " -{}-> {}", g.edge_id(e), g.vertex_id(g.range(e)));
        }
        out
    }
}
