use std::fmt;
use std::sync::Arc;

use super::{Elem, FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// A subgroup stored as a sorted element list plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Arc<[Elem]>,
    mask: Arc<[bool]>,
}

impl Subgroup {
    /// Checks closure under products and inverses.
    pub fn from_elements(parent: &FiniteGroup, elements: &[Elem]) -> Result<Subgroup> {
        let mut mask = vec![false; parent.order()];
        for &e in elements {
            if e >= parent.order() {
                return Err(Error::Malformed(format!("element {e} outside parent")));
            }
            mask[e] = true;
        }
        if !mask[0] {
            return Err(Error::Malformed("subgroup misses the identity".into()));
        }
        for &a in elements {
            if !mask[parent.inv(a)] {
                return Err(Error::Malformed(format!("subgroup misses inverse of {a}")));
            }
            for &b in elements {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::Malformed(format!("subgroup misses product {a}·{b}")));
                }
            }
        }
        Ok(Self::from_mask(parent, mask))
    }

    pub(crate) fn from_mask(parent: &FiniteGroup, mask: Vec<bool>) -> Subgroup {
        let elements: Vec<Elem> = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup { parent: parent.clone(), elements: elements.into(), mask: mask.into() }
    }

    pub(crate) fn from_predicate(parent: &FiniteGroup, pred: impl Fn(Elem) -> bool) -> Subgroup {
        Self::from_mask(parent, parent.elements().map(pred).collect())
    }

    pub fn whole(parent: &FiniteGroup) -> Subgroup {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Self::from_mask(parent, mask)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&x| other.contains(x))
    }

    /// `Err(NotNormal)` names a parent generator `g` and element `h` with
    /// `g h g⁻¹` outside the subgroup.
    pub fn check_normal(&self) -> Result<()> {
        for &g in self.parent.generators() {
            for &h in self.elements.iter() {
                if !self.contains(self.parent.conj(g, h)) {
                    return Err(Error::NotNormal { conjugator: g, element: h });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.check_normal().is_ok()
    }

    /// The subgroup as a standalone group (element `i` is `elements()[i]`)
    /// together with its inclusion into the parent.
    pub fn to_group(&self) -> (FiniteGroup, GroupHom) {
        if self.is_whole() {
            return (self.parent.clone(), GroupHom::identity(&self.parent));
        }
        let g = FiniteGroup::embedded(&self.parent, &self.elements);
        let incl = GroupHom::new_unchecked(&g, &self.parent, self.elements.to_vec());
        (g, incl)
    }

    /// Index of `x` inside `elements()`.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={} of {})", self.order(), self.parent.order())
    }
}

pub fn intersect(h1: &Subgroup, h2: &Subgroup) -> Result<Subgroup> {
    if h1.parent != h2.parent {
        return Err(Error::MismatchedParent);
    }
    Ok(Subgroup::from_predicate(&h1.parent, |x| h1.contains(x) && h2.contains(x)))
}

/// Closes `seeds` under products. Inverses come for free in a finite group.
pub fn generated_subgroup(parent: &FiniteGroup, seeds: &[Elem]) -> Subgroup {
    let mut closure = Closure::new(parent);
    for &s in seeds {
        closure.add_generator(s);
    }
    closure.finish()
}

/// Smallest normal subgroup containing `seeds`.
pub fn normal_closure(parent: &FiniteGroup, seeds: &[Elem]) -> Subgroup {
    let mut closure = Closure::new(parent);
    for &s in seeds {
        closure.add_generator(s);
    }
    let mut i = 0;
    while i < closure.gens.len() {
        let h = closure.gens[i];
        for &g in parent.generators() {
            closure.add_generator(parent.conj(g, h));
        }
        i += 1;
    }
    closure.finish()
}

/// Incrementally grown subgroup `⟨gens⟩`, kept closed under right
/// multiplication by every generator added so far.
pub(crate) struct Closure<'a> {
    group: &'a FiniteGroup,
    mask: Vec<bool>,
    elements: Vec<Elem>,
    gens: Vec<Elem>,
}

impl<'a> Closure<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Closure { group, mask, elements: vec![0], gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Returns whether `x` enlarged the subgroup.
    pub fn add_generator(&mut self, x: Elem) -> bool {
        if self.mask[x] {
            return false;
        }
        self.gens.push(x);
        let old = self.elements.len();
        for i in 0..old {
            let y = self.group.mul(self.elements[i], x);
            self.push(y);
        }
        let mut i = old;
        while i < self.elements.len() {
            let e = self.elements[i];
            for j in 0..self.gens.len() {
                let y = self.group.mul(e, self.gens[j]);
                self.push(y);
            }
            i += 1;
        }
        true
    }

    fn push(&mut self, y: Elem) {
        if !self.mask[y] {
            self.mask[y] = true;
            self.elements.push(y);
        }
    }

    pub fn finish(self) -> Subgroup {
        Subgroup::from_mask(self.group, self.mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    #[test]
    fn a3_from_three_cycle() {
        let s3 = library::symmetric(3);
        let c = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let a3 = generated_subgroup(&s3, &[c]);
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal());
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let c2 = generated_subgroup(&s3, &[t]);
        assert_eq!(c2.order(), 2);
        let err = c2.check_normal().unwrap_err();
        assert!(matches!(err, Error::NotNormal { .. }));
        assert!(intersect(&a3, &c2).unwrap().is_trivial());
    }

    #[test]
    fn mismatched_parent() {
        let a = Subgroup::whole(&FiniteGroup::cyclic(2));
        let b = Subgroup::whole(&FiniteGroup::cyclic(3));
        assert!(matches!(intersect(&a, &b), Err(Error::MismatchedParent)));
    }

    #[test]
    fn normal_closure_of_transposition_is_s3() {
        let s3 = library::symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(normal_closure(&s3, &[t]).order(), 6);
    }

    #[test]
    fn from_elements_validates() {
        let c4 = FiniteGroup::cyclic(4);
        assert!(Subgroup::from_elements(&c4, &[0, 2]).is_ok());
        assert!(Subgroup::from_elements(&c4, &[0, 1]).is_err());
    }
}
