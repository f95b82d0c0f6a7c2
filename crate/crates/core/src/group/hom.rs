use std::fmt;
use std::sync::Arc;

use super::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Arc<[Elem]>,
}

impl GroupHom {
    /// Validates the map on generator edges: `f(x·g) = f(x)·f(g)` for every
    /// `x` and every generator `g` forces `f` to be a homomorphism.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Result<GroupHom> {
        if map.len() != source.order() {
            return Err(Error::InvalidHom {
                reason: format!("map has length {}, source has order {}", map.len(), source.order()),
                witness: vec![],
            });
        }
        if let Some(x) = map.iter().position(|&y| y >= target.order()) {
            return Err(Error::InvalidHom { reason: "image outside target".into(), witness: vec![x] });
        }
        if map[0] != 0 {
            return Err(Error::InvalidHom { reason: "identity not preserved".into(), witness: vec![0] });
        }
        for &g in source.generators() {
            for x in source.elements() {
                if map[source.mul(x, g)] != target.mul(map[x], map[g]) {
                    return Err(Error::InvalidHom {
                        reason: "product not preserved".into(),
                        witness: vec![x, g],
                    });
                }
            }
        }
        Ok(Self::new_unchecked(source, target, map))
    }

    pub(crate) fn new_unchecked(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> GroupHom {
        GroupHom { source: source.clone(), target: target.clone(), map: map.into() }
    }

    pub(crate) fn from_fn_unchecked(
        source: &FiniteGroup,
        target: &FiniteGroup,
        f: impl Fn(Elem) -> Elem,
    ) -> GroupHom {
        Self::new_unchecked(source, target, source.elements().map(f).collect())
    }

    pub fn from_fn(source: &FiniteGroup, target: &FiniteGroup, f: impl Fn(Elem) -> Elem) -> Result<GroupHom> {
        Self::new(source, target, source.elements().map(f).collect())
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        Self::new_unchecked(g, g, g.elements().collect())
    }

    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> GroupHom {
        Self::new_unchecked(source, target, vec![0; source.order()])
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `next ∘ self`
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        debug_assert!(self.target.order() == next.source.order());
        GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&x| x == 0)
    }

    /// A nonzero source element mapping to something nonzero, if any.
    pub fn nonzero_witness(&self) -> Option<Elem> {
        self.map.iter().position(|&x| x != 0)
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_predicate(&self.source, |x| self.map[x] == 0)
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &y in self.map.iter() {
            mask[y] = true;
        }
        Subgroup::from_mask(&self.target, mask)
    }

    pub fn is_injective(&self) -> bool {
        self.map[1..].iter().all(|&x| x != 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_iso(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse of a bijective hom.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(&self.target, &self.source, inv))
    }

    /// Corestriction onto a subgroup of the target that contains the image,
    /// indexed as in [`Subgroup::to_group`].
    pub fn corestrict(&self, onto: &Subgroup, onto_group: &FiniteGroup) -> GroupHom {
        Self::from_fn_unchecked(&self.source, onto_group, |x| {
            onto.position(self.map[x]).expect("image inside corestriction")
        })
    }

    /// `self` precomposed with the inclusion of `sub`.
    pub fn restrict(&self, sub: &Subgroup, sub_group: &FiniteGroup) -> GroupHom {
        Self::from_fn_unchecked(sub_group, &self.target, |i| self.map[sub.elements()[i]])
    }

    /// Same map, compared pointwise.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.map == other.map
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for GroupHom {}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}, {:?})", self.source.order(), self.target.order(), &self.map[..self.map.len().min(16)])
    }
}
