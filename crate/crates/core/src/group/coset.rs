use super::{Group, GroupElement, GroupKind, Subgroup};
use crate::error::{Error, Result};

/// A finite space of right cosets `H\Γ` with the right action of `Γ`.
///
/// Cosets are numbered from 0, and coset 0 is always `H` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetSpace {
    /// `dZ\Z` or `<d>\(Z/nZ)`: cosets are the residues `0..d`.
    Residues { modulus: u64 },
    /// Cosets of a finite subgroup, with representatives minimal in the
    /// group's enumeration order.
    Table {
        /// Representative of each coset, as an element position.
        reps: Vec<usize>,
        /// Coset number of every element position.
        coset_of: Vec<usize>,
    },
    /// Points `0..points` of a transitive permutation group, standing for the
    /// cosets of the stabilizer of point 0: `Hg` corresponds to the image of
    /// 0 under `g`.
    PointAction { points: usize },
    /// The elements of a finite subgroup acting on themselves by right
    /// multiplication (cosets of the trivial subgroup inside it).
    Regular {
        /// Element positions of the members, in enumeration order.
        members: Vec<usize>,
        slot: std::collections::HashMap<usize, usize>,
    },
}

impl CosetSpace {
    pub fn new(group: &Group, h: &Subgroup) -> Result<Self> {
        match (group.kind(), h) {
            (GroupKind::Integers, Subgroup::Multiples(0)) => Err(Error::InfiniteCosetSpace),
            (GroupKind::Integers | GroupKind::Cyclic(_), Subgroup::Multiples(d)) => {
                Ok(CosetSpace::Residues { modulus: *d })
            }
            (GroupKind::Perm { .. }, Subgroup::Finite(set)) => {
                let elements = group.elements()?;
                let members = h.elements(group)?;
                let mut coset_of = vec![usize::MAX; elements.len()];
                let mut reps = Vec::new();
                for (gi, g) in elements.iter().enumerate() {
                    if coset_of[gi] != usize::MAX {
                        continue;
                    }
                    for x in &members {
                        coset_of[group.element_index(&group.op(x, g))?] = reps.len();
                    }
                    reps.push(gi);
                }
                debug_assert_eq!(reps.len() * set.len(), elements.len());
                Ok(CosetSpace::Table { reps, coset_of })
            }
            _ => Err(Error::GroupMismatch(format!(
                "subgroup does not belong to {group}"
            ))),
        }
    }

    /// Regular action of a finite subgroup on itself.
    pub fn regular(group: &Group, h: &Subgroup) -> Result<Self> {
        let members: Vec<usize> = h
            .elements(group)?
            .iter()
            .map(|x| group.element_index(x))
            .collect::<Result<_>>()?;
        let mut members = members;
        members.sort();
        let slot = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(CosetSpace::Regular { members, slot })
    }

    pub fn len(&self) -> usize {
        match self {
            CosetSpace::Residues { modulus } => *modulus as usize,
            CosetSpace::Table { reps, .. } => reps.len(),
            CosetSpace::PointAction { points } => *points,
            CosetSpace::Regular { members, .. } => members.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coset `H a` of an element.
    pub fn coset_of(&self, group: &Group, a: &GroupElement) -> Result<usize> {
        match (self, a) {
            (CosetSpace::Residues { modulus }, GroupElement::Int(x)) => {
                Ok(x.rem_euclid(*modulus as i64) as usize)
            }
            (CosetSpace::Table { coset_of, .. }, _) => Ok(coset_of[group.element_index(a)?]),
            (CosetSpace::PointAction { .. }, GroupElement::Perm(p)) => Ok(p.apply(0)),
            (CosetSpace::Regular { slot, .. }, _) => slot
                .get(&group.element_index(a)?)
                .copied()
                .ok_or_else(|| Error::InvalidElement(group.format_element(a))),
            _ => Err(Error::GroupMismatch(group.format_element(a))),
        }
    }

    /// Right action `(H g) · c = H (g c)`.
    pub fn act(&self, group: &Group, coset: usize, c: &GroupElement) -> usize {
        match (self, c) {
            (CosetSpace::Residues { modulus }, GroupElement::Int(x)) => {
                ((coset as i64 + x.rem_euclid(*modulus as i64)) % *modulus as i64) as usize
            }
            (CosetSpace::Table { reps, coset_of }, _) => {
                let rep = &group.elements().expect("enumerated on construction")[reps[coset]];
                let idx = group
                    .element_index(&group.op(rep, c))
                    .expect("closed under products");
                coset_of[idx]
            }
            (CosetSpace::PointAction { .. }, GroupElement::Perm(p)) => p.apply(coset),
            (CosetSpace::Regular { members, slot }, _) => {
                let x = &group.elements().expect("enumerated on construction")[members[coset]];
                let idx = group
                    .element_index(&group.op(x, c))
                    .expect("closed under products");
                *slot.get(&idx).expect("labels lie in the subgroup")
            }
            _ => panic!("element does not match the coset space"),
        }
    }

    /// Whitespace-free label of a coset, used in product vertex ids.
    pub fn label(&self, group: &Group, coset: usize) -> String {
        match self {
            CosetSpace::Residues { .. } => coset.to_string(),
            CosetSpace::Table { reps, .. } => {
                let rep = &group.elements().expect("enumerated on construction")[reps[coset]];
                group.compact_element(rep)
            }
            CosetSpace::PointAction { .. } => format!("p{}", coset + 1),
            CosetSpace::Regular { members, .. } => group.compact_element(
                &group.elements().expect("enumerated on construction")[members[coset]],
            ),
        }
    }
}
