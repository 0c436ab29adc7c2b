//! Computable groups: the integers, cyclic groups and permutation groups,
//! with subgroups and right coset spaces.

mod coset;
mod perm;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use coset::CosetSpace;
pub use perm::Permutation;
pub use subgroup::Subgroup;

/// Largest permutation group that will be enumerated.
pub const PERM_GROUP_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Integers,
    /// `Z/nZ`, elements `0..n`.
    Cyclic(u64),
    /// Subgroup of the symmetric group on `degree` points generated by `generators`.
    Perm {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Int(i64),
    Perm(Permutation),
}

/// A finite or countably infinite cardinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinal {
    Finite(u64),
    Infinite,
}

impl Cardinal {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Infinite => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Cardinal::Finite(n) => json!(n),
            Cardinal::Infinite => json!("infinite"),
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug)]
pub(crate) struct ElementTable {
    pub(crate) elements: Vec<GroupElement>,
    pub(crate) index: HashMap<GroupElement, usize>,
}

/// A group together with a lazily built element table for finite kinds.
#[derive(Debug)]
pub struct Group {
    kind: GroupKind,
    table: OnceLock<Result<ElementTable>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Self::new(self.kind.clone())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Group {}

impl Group {
    pub fn new(kind: GroupKind) -> Self {
        Self {
            kind,
            table: OnceLock::new(),
        }
    }

    pub fn integers() -> Self {
        Self::new(GroupKind::Integers)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroupSpec("Zn:0".into()));
        }
        Ok(Self::new(GroupKind::Cyclic(n)))
    }

    pub fn perm(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidGroupSpec(format!(
                "generators must act on {degree} >= 1 points"
            )));
        }
        Ok(Self::new(GroupKind::Perm { degree, generators }))
    }

    /// Symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut cycle: Vec<usize> = (1..degree).collect();
            cycle.push(0);
            gens.push(Permutation::from_images(cycle)?);
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(Permutation::from_images(swap)?);
        }
        Self::perm(degree, gens)
    }

    /// Parses `Z`, `Zn:<n>` or `perm:<m>:<gen>,<gen>,...` with generators in
    /// 1-based cycle notation.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidGroupSpec(spec.to_string());
        let spec_t = spec.trim();
        if spec_t == "Z" {
            return Ok(Self::integers());
        }
        if let Some(n) = spec_t.strip_prefix("Zn:") {
            return Self::cyclic(n.trim().parse().map_err(|_| bad())?);
        }
        if let Some(rest) = spec_t.strip_prefix("perm:") {
            let (m, gens) = rest.split_once(':').unwrap_or((rest, ""));
            let degree: usize = m.trim().parse().map_err(|_| bad())?;
            let generators = split_top_level(gens)
                .into_iter()
                .map(|g| Permutation::parse(g, degree))
                .collect::<Result<Vec<_>>>()?;
            return Self::perm(degree, generators);
        }
        Err(bad())
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, GroupKind::Integers)
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Integers | GroupKind::Cyclic(_) => true,
            GroupKind::Perm { generators, .. } => generators
                .iter()
                .all(|a| generators.iter().all(|b| a.then(b) == b.then(a))),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Integers | GroupKind::Cyclic(_) => GroupElement::Int(0),
            GroupKind::Perm { degree, .. } => GroupElement::Perm(Permutation::identity(*degree)),
        }
    }

    /// Product `a·b`; for permutations `a` acts first.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&self.kind, a, b) {
            (GroupKind::Integers, GroupElement::Int(x), GroupElement::Int(y)) => {
                GroupElement::Int(x.checked_add(*y).expect("integer voltage overflow"))
            }
            (GroupKind::Cyclic(n), GroupElement::Int(x), GroupElement::Int(y)) => {
                let n = *n as i128;
                GroupElement::Int(((*x as i128 + *y as i128).rem_euclid(n)) as i64)
            }
            (GroupKind::Perm { .. }, GroupElement::Perm(p), GroupElement::Perm(q)) => {
                GroupElement::Perm(p.then(q))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (&self.kind, a) {
            (GroupKind::Integers, GroupElement::Int(x)) => GroupElement::Int(-x),
            (GroupKind::Cyclic(n), GroupElement::Int(x)) => {
                GroupElement::Int((-(*x as i128)).rem_euclid(*n as i128) as i64)
            }
            (GroupKind::Perm { .. }, GroupElement::Perm(p)) => GroupElement::Perm(p.inverse()),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    /// `a·b·a⁻¹`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.op(&self.op(a, b), &self.inv(a))
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.op(&acc, x))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (&self.kind, a) {
            (GroupKind::Integers, GroupElement::Int(_)) => true,
            (GroupKind::Cyclic(n), GroupElement::Int(x)) => *x >= 0 && (*x as u64) < *n,
            (GroupKind::Perm { degree, .. }, GroupElement::Perm(p)) => {
                p.degree() == *degree && self.table().is_ok_and(|t| t.index.contains_key(a))
            }
            _ => false,
        }
    }

    /// Parses an element: an integer, or cycle notation for permutations.
    /// Integers are reduced modulo `n` in `Z/nZ`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let bad = || Error::InvalidElement(text.trim().to_string());
        let e = match &self.kind {
            GroupKind::Integers => GroupElement::Int(text.trim().parse().map_err(|_| bad())?),
            GroupKind::Cyclic(n) => {
                let x: i64 = text.trim().parse().map_err(|_| bad())?;
                GroupElement::Int(x.rem_euclid(*n as i64))
            }
            GroupKind::Perm { degree, .. } => {
                GroupElement::Perm(Permutation::parse(text, *degree).map_err(|_| bad())?)
            }
        };
        if !self.contains(&e) {
            return Err(Error::InvalidElement(format!(
                "{} is not in {self}",
                text.trim()
            )));
        }
        Ok(e)
    }

    pub fn format_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Int(x) => x.to_string(),
            GroupElement::Perm(p) => p.to_string(),
        }
    }

    /// Whitespace-free rendering for use inside ids.
    pub fn compact_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Int(x) => x.to_string(),
            GroupElement::Perm(p) => p.compact(),
        }
    }

    pub fn element_json(&self, a: &GroupElement) -> Value {
        match a {
            GroupElement::Int(x) => json!(x),
            GroupElement::Perm(p) => json!(p.to_string()),
        }
    }

    pub(crate) fn table(&self) -> Result<&ElementTable> {
        self.table
            .get_or_init(|| self.enumerate())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn enumerate(&self) -> Result<ElementTable> {
        let mut elements = match &self.kind {
            GroupKind::Integers => return Err(Error::InfiniteGroup("Z")),
            GroupKind::Cyclic(n) => {
                if *n as usize > PERM_GROUP_CAP {
                    return Err(Error::GroupTooLarge {
                        cap: PERM_GROUP_CAP,
                    });
                }
                (0..*n as i64).map(GroupElement::Int).collect::<Vec<_>>()
            }
            GroupKind::Perm { generators, .. } => {
                let id = self.identity();
                let mut seen = std::collections::HashSet::from([id.clone()]);
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for g in generators {
                        let y = self.op(&x, &GroupElement::Perm(g.clone()));
                        if seen.insert(y.clone()) {
                            if seen.len() > PERM_GROUP_CAP {
                                return Err(Error::GroupTooLarge {
                                    cap: PERM_GROUP_CAP,
                                });
                            }
                            queue.push_back(y);
                        }
                    }
                }
                seen.into_iter().collect()
            }
        };
        // lexicographic by image vector: the identity comes first
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(ElementTable { elements, index })
    }

    /// All elements in enumeration order, identity first.
    pub fn elements(&self) -> Result<&[GroupElement]> {
        Ok(&self.table()?.elements)
    }

    /// Position in enumeration order.
    pub fn element_index(&self, a: &GroupElement) -> Result<usize> {
        self.table()?
            .index
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidElement(self.format_element(a)))
    }

    pub fn order(&self) -> Result<Cardinal> {
        match &self.kind {
            GroupKind::Integers => Ok(Cardinal::Infinite),
            GroupKind::Cyclic(n) => Ok(Cardinal::Finite(*n)),
            GroupKind::Perm { .. } => Ok(Cardinal::Finite(self.elements()?.len() as u64)),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Integers => f.write_str("Z"),
            GroupKind::Cyclic(n) => write!(f, "Zn:{n}"),
            GroupKind::Perm { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "perm:{degree}:{}", gens.join(","))
            }
        }
    }
}

/// Splits on commas that are not inside parentheses.
pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(Group::parse("Z").unwrap(), Group::integers());
        assert_eq!(Group::parse("Zn:6").unwrap(), Group::cyclic(6).unwrap());
        let s3 = Group::parse("perm:3:(1 2 3),(1 2)").unwrap();
        assert_eq!(s3.order().unwrap(), Cardinal::Finite(6));
        assert_eq!(s3.to_string(), "perm:3:(1 2 3),(1 2)");
        assert!(Group::parse("perm:3").unwrap().order().unwrap() == Cardinal::Finite(1));
        assert!(Group::parse("Q").is_err());
        assert!(Group::parse("Zn:0").is_err());
        assert!(Group::parse("perm:2:(1 3)").is_err());
    }

    #[test]
    fn identity_enumerated_first() {
        let s3 = Group::symmetric(3).unwrap();
        let els = s3.elements().unwrap();
        assert_eq!(els.len(), 6);
        assert!(s3.is_identity(&els[0]));
        assert!(!s3.is_abelian());
    }

    #[test]
    fn cyclic_arithmetic() {
        let z5 = Group::cyclic(5).unwrap();
        let a = z5.parse_element("-1").unwrap();
        assert_eq!(a, GroupElement::Int(4));
        assert_eq!(z5.op(&a, &GroupElement::Int(3)), GroupElement::Int(2));
        assert_eq!(z5.inv(&GroupElement::Int(2)), GroupElement::Int(3));
    }

    #[test]
    fn membership_of_permutations() {
        let a3 = Group::parse("perm:3:(1 2 3)").unwrap();
        assert!(a3.parse_element("(1 3 2)").is_ok());
        assert!(a3.parse_element("(1 2)").is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let s9 = Group::symmetric(9).unwrap();
        assert_eq!(
            s9.order(),
            Err(Error::GroupTooLarge {
                cap: PERM_GROUP_CAP
            })
        );
        let s8 = Group::symmetric(8).unwrap();
        assert_eq!(s8.order().unwrap(), Cardinal::Finite(40320));
    }
}
