use std::fmt;
use std::sync::Arc;

use super::{Elem, FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// A left action of `actor` on `space` by automorphisms.
#[derive(Clone)]
pub struct GroupAction {
    actor: FiniteGroup,
    space: FiniteGroup,
    perms: Arc<[Vec<Elem>]>,
}

impl GroupAction {
    /// Validates: each `perms[a]` is an automorphism, `perms[0]` is the
    /// identity and `perms[a·g] = perms[a] ∘ perms[g]` on generator edges.
    pub fn new(actor: &FiniteGroup, space: &FiniteGroup, perms: Vec<Vec<Elem>>) -> Result<GroupAction> {
        if perms.len() != actor.order() {
            return Err(Error::InvalidAction { reason: "one map per actor element".into(), witness: vec![] });
        }
        for (a, p) in perms.iter().enumerate() {
            let f = GroupHom::new(space, space, p.clone()).map_err(|e| Error::InvalidAction {
                reason: format!("actor element {a} does not act by a hom: {e}"),
                witness: vec![a],
            })?;
            if !f.is_iso() {
                return Err(Error::InvalidAction { reason: "not bijective".into(), witness: vec![a] });
            }
        }
        if let Some(x) = space.elements().find(|&x| perms[0][x] != x) {
            return Err(Error::InvalidAction { reason: "identity acts nontrivially".into(), witness: vec![0, x] });
        }
        for &g in actor.generators() {
            for a in actor.elements() {
                let ag = actor.mul(a, g);
                if let Some(x) = space.elements().find(|&x| perms[ag][x] != perms[a][perms[g][x]]) {
                    return Err(Error::InvalidAction {
                        reason: "not compatible with products".into(),
                        witness: vec![a, g, x],
                    });
                }
            }
        }
        Ok(Self::new_unchecked(actor, space, perms))
    }

    pub(crate) fn new_unchecked(actor: &FiniteGroup, space: &FiniteGroup, perms: Vec<Vec<Elem>>) -> GroupAction {
        GroupAction { actor: actor.clone(), space: space.clone(), perms: perms.into() }
    }

    pub fn from_fn(actor: &FiniteGroup, space: &FiniteGroup, f: impl Fn(Elem, Elem) -> Elem) -> Result<GroupAction> {
        Self::new(actor, space, Self::tabulate(actor, space, f))
    }

    pub(crate) fn from_fn_unchecked(
        actor: &FiniteGroup,
        space: &FiniteGroup,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> GroupAction {
        Self::new_unchecked(actor, space, Self::tabulate(actor, space, f))
    }

    fn tabulate(actor: &FiniteGroup, space: &FiniteGroup, f: impl Fn(Elem, Elem) -> Elem) -> Vec<Vec<Elem>> {
        actor.elements().map(|a| space.elements().map(|x| f(a, x)).collect()).collect()
    }

    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> GroupAction {
        Self::from_fn_unchecked(actor, space, |_, x| x)
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: &FiniteGroup) -> GroupAction {
        Self::from_fn_unchecked(g, g, |a, x| g.conj(a, x))
    }

    /// `B` acting on `A` through an injective `A → B` with normal image, by
    /// conjugation inside `B`.
    pub fn conjugation_through(incl: &GroupHom) -> Result<GroupAction> {
        let b = incl.target();
        let a = incl.source();
        let mut back = vec![usize::MAX; b.order()];
        for x in a.elements() {
            back[incl.apply(x)] = x;
        }
        let mut perms = Vec::with_capacity(b.order());
        for g in b.elements() {
            let mut p = Vec::with_capacity(a.order());
            for x in a.elements() {
                let y = back[b.conj(g, incl.apply(x))];
                if y == usize::MAX {
                    return Err(Error::NotNormal { conjugator: g, element: incl.apply(x) });
                }
                p.push(y);
            }
            perms.push(p);
        }
        Self::new(b, a, perms)
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn space(&self) -> &FiniteGroup {
        &self.space
    }

    pub fn perms(&self) -> &[Vec<Elem>] {
        &self.perms
    }

    /// `ᵇx`
    #[inline]
    pub fn act(&self, b: Elem, x: Elem) -> Elem {
        self.perms[b][x]
    }

    /// A pair `(b, x)` with `ᵇx ≠ x`, if the action is nontrivial.
    pub fn nontrivial_witness(&self) -> Option<(Elem, Elem)> {
        for &b in self.actor.generators() {
            if let Some(x) = self.space.elements().find(|&x| self.perms[b][x] != x) {
                return Some((b, x));
            }
        }
        None
    }

    pub fn is_trivial(&self) -> bool {
        self.nontrivial_witness().is_none()
    }

    /// The action pulled back along `f: C → actor`.
    pub fn pullback(&self, f: &GroupHom) -> GroupAction {
        Self::from_fn_unchecked(f.source(), &self.space, |c, x| self.act(f.apply(c), x))
    }
}

impl PartialEq for GroupAction {
    fn eq(&self, other: &Self) -> bool {
        self.perms == other.perms && self.actor == other.actor && self.space == other.space
    }
}

impl Eq for GroupAction {}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({} on {})", self.actor.order(), self.space.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_action_of_c2_on_c3() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let act = GroupAction::from_fn(&c2, &c3, |b, x| if b == 0 { x } else { c3.inv(x) }).unwrap();
        assert_eq!(act.nontrivial_witness(), Some((1, 1)));
        assert!(GroupAction::trivial(&c2, &c3).is_trivial());
    }

    #[test]
    fn rejects_non_action() {
        let c3 = FiniteGroup::cyclic(3);
        // C3 acting on C3 by inversion for every nonzero element
        let bad = GroupAction::from_fn(&c3, &c3, |b, x| if b == 0 { x } else { c3.inv(x) });
        assert!(matches!(bad, Err(Error::InvalidAction { .. })));
        let c2 = FiniteGroup::cyclic(2);
        let bad = GroupAction::from_fn(&c2, &c3, |b, x| if b == 0 { x } else { (x + 1) % 3 });
        assert!(bad.is_err());
    }
}
