use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use serde_json::{json, Value};

use super::{Cardinal, Group, GroupElement, GroupKind};
use crate::error::{Error, Result};

/// A subgroup of a [`Group`].
///
/// For the integers `Multiples(d)` is `dZ` (`d = 0` the trivial subgroup);
/// in `Z/nZ` it is generated by `d`, a divisor of `n` (`d = n` trivial).
/// Subgroups of permutation groups are element sets, as positions in the
/// group's enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    Multiples(u64),
    Finite(BTreeSet<usize>),
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Result<Self> {
        Self::generated(group, &[])
    }

    pub fn whole(group: &Group) -> Result<Self> {
        match group.kind() {
            GroupKind::Integers | GroupKind::Cyclic(_) => Ok(Subgroup::Multiples(1)),
            GroupKind::Perm { .. } => Ok(Subgroup::Finite((0..group.elements()?.len()).collect())),
        }
    }

    /// Parses comma-separated generators in the group's element syntax; an
    /// empty list gives the trivial subgroup.
    pub fn parse(group: &Group, spec: &str) -> Result<Self> {
        let gens = super::split_top_level(spec)
            .into_iter()
            .map(|x| group.parse_element(x))
            .collect::<Result<Vec<_>>>()?;
        Self::generated(group, &gens)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[GroupElement]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !group.contains(g)) {
            return Err(Error::InvalidElement(group.format_element(g)));
        }
        match group.kind() {
            GroupKind::Integers => Ok(Subgroup::Multiples(
                gens.iter().fold(0u64, |d, g| d.gcd(&int(g).unsigned_abs())),
            )),
            GroupKind::Cyclic(n) => Ok(Subgroup::Multiples(
                gens.iter().fold(*n, |d, g| d.gcd(&(int(g) as u64))),
            )),
            GroupKind::Perm { .. } => {
                let id = group.identity();
                let mut members = BTreeSet::from([group.element_index(&id)?]);
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for g in gens {
                        let y = group.op(&x, g);
                        if members.insert(group.element_index(&y)?) {
                            queue.push_back(y);
                        }
                    }
                }
                Ok(Subgroup::Finite(members))
            }
        }
    }

    pub fn contains(&self, group: &Group, a: &GroupElement) -> bool {
        match (self, a) {
            (Subgroup::Multiples(0), GroupElement::Int(x)) => *x == 0,
            (Subgroup::Multiples(d), GroupElement::Int(x)) => x.rem_euclid(*d as i64) == 0,
            (Subgroup::Finite(set), _) => group.element_index(a).is_ok_and(|i| set.contains(&i)),
            _ => false,
        }
    }

    pub fn order(&self, group: &Group) -> Cardinal {
        match (self, group.kind()) {
            (Subgroup::Multiples(0), _) => Cardinal::Finite(1),
            (Subgroup::Multiples(_), GroupKind::Integers) => Cardinal::Infinite,
            (Subgroup::Multiples(d), GroupKind::Cyclic(n)) => Cardinal::Finite(n / d),
            (Subgroup::Finite(set), _) => Cardinal::Finite(set.len() as u64),
            (Subgroup::Multiples(_), GroupKind::Perm { .. }) => unreachable!("no such subgroup"),
        }
    }

    /// Index `[Γ : H]`.
    pub fn index(&self, group: &Group) -> Result<Cardinal> {
        Ok(match self {
            Subgroup::Multiples(0) => match group.kind() {
                GroupKind::Integers => Cardinal::Infinite,
                _ => group.order()?,
            },
            Subgroup::Multiples(d) => Cardinal::Finite(*d),
            Subgroup::Finite(set) => {
                Cardinal::Finite(group.elements()?.len() as u64 / set.len() as u64)
            }
        })
    }

    /// Elements of a finite subgroup.
    pub fn elements(&self, group: &Group) -> Result<Vec<GroupElement>> {
        match (self, group.kind()) {
            (Subgroup::Multiples(0), _) => Ok(vec![group.identity()]),
            (Subgroup::Multiples(_), GroupKind::Integers) => Err(Error::InfiniteGroup("dZ")),
            (Subgroup::Multiples(d), GroupKind::Cyclic(n)) => Ok((0..*n)
                .step_by(*d as usize)
                .map(|x| GroupElement::Int(x as i64))
                .collect()),
            (Subgroup::Finite(set), _) => {
                let all = group.elements()?;
                Ok(set.iter().map(|&i| all[i].clone()).collect())
            }
            (Subgroup::Multiples(_), GroupKind::Perm { .. }) => unreachable!("no such subgroup"),
        }
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, group: &Group, g: &GroupElement) -> Result<Self> {
        match self {
            Subgroup::Multiples(_) => Ok(self.clone()),
            Subgroup::Finite(_) => {
                let set = self
                    .elements(group)?
                    .iter()
                    .map(|h| group.element_index(&group.conjugate(g, h)))
                    .collect::<Result<_>>()?;
                Ok(Subgroup::Finite(set))
            }
        }
    }

    /// Normal in `group`: invariant under conjugation by every generator of the group.
    pub fn is_normal(&self, group: &Group) -> Result<bool> {
        match group.kind() {
            GroupKind::Integers | GroupKind::Cyclic(_) => Ok(true),
            GroupKind::Perm { generators, .. } => {
                for g in generators {
                    let g = GroupElement::Perm(g.clone());
                    if self.conjugate(group, &g)? != *self {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn describe(&self, group: &Group) -> String {
        match (self, group.kind()) {
            (Subgroup::Multiples(d), GroupKind::Integers) => format!("{d}Z"),
            (Subgroup::Multiples(d), GroupKind::Cyclic(n)) => format!("<{d}> in Z/{n}Z"),
            _ => {
                let els = self.elements(group).unwrap_or_default();
                let parts: Vec<String> = els.iter().map(|e| group.format_element(e)).collect();
                format!("{{{}}}", parts.join(", "))
            }
        }
    }

    pub fn to_json(&self, group: &Group) -> Value {
        let order = self.order(group).to_json();
        let index = self
            .index(group)
            .map(Cardinal::to_json)
            .unwrap_or(Value::Null);
        match self {
            Subgroup::Multiples(d) => json!({
                "generator": d,
                "order": order,
                "index": index,
                "description": self.describe(group),
            }),
            Subgroup::Finite(_) => json!({
                "elements": self
                    .elements(group)
                    .unwrap_or_default()
                    .iter()
                    .map(|e| group.format_element(e))
                    .collect::<Vec<_>>(),
                "order": order,
                "index": index,
            }),
        }
    }
}

fn int(g: &GroupElement) -> i64 {
    match g {
        GroupElement::Int(x) => *x,
        GroupElement::Perm(_) => unreachable!("checked by contains"),
    }
}
