use std::collections::BTreeSet;

use serde::Serialize;

use super::{action_witness, find2, hom_witness, AxiomReport};
use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::group::{center, enumerate_homs, is_central_extension, Elem, FiniteGroup, GroupAction, GroupHom};

/// `δ: A → B` with an action of `B` on `A`, stored as tables:
/// `delta[a] = δ(a)` and `action[b][a] = ᵇa`.
#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub a: FiniteGroup,
    pub b: FiniteGroup,
    pub delta: Vec<Elem>,
    pub action: Vec<Vec<Elem>>,
}

impl CrossedModule {
    /// Assembles without checking the crossed-module axioms.
    pub fn from_parts(delta: &GroupHom, action: &GroupAction) -> CrossedModule {
        CrossedModule {
            a: delta.source().clone(),
            b: delta.target().clone(),
            delta: delta.map().to_vec(),
            action: action.perms().to_vec(),
        }
    }

    pub fn new(delta: &GroupHom, action: &GroupAction) -> Result<CrossedModule> {
        if action.actor() != delta.target() || action.space() != delta.source() {
            return Err(Error::InvalidCrossed("action does not match the differential".into()));
        }
        let xm = Self::from_parts(delta, action);
        validate_crossed_module(&xm).into_result()?;
        Ok(xm)
    }

    /// `id: G → G` with conjugation.
    pub fn conjugation(g: &FiniteGroup) -> CrossedModule {
        Self::from_parts(&GroupHom::identity(g), &GroupAction::conjugation(g))
    }

    /// The inclusion of a normal subgroup with conjugation.
    pub fn normal_inclusion(incl: &GroupHom) -> Result<CrossedModule> {
        if !incl.is_injective() {
            return Err(Error::InvalidCrossed("inclusion is not injective".into()));
        }
        Self::new(incl, &GroupAction::conjugation_through(incl)?)
    }

    /// `A → 0`; a crossed module exactly when `A` is abelian.
    pub fn abelian(a: &FiniteGroup) -> Result<CrossedModule> {
        let t = FiniteGroup::trivial();
        Self::new(&GroupHom::zero(a, &t), &GroupAction::trivial(&t, a))
    }

    /// `0 → G`.
    pub fn discrete(g: &FiniteGroup) -> CrossedModule {
        let t = FiniteGroup::trivial();
        Self::from_parts(&GroupHom::zero(&t, g), &GroupAction::trivial(g, &t))
    }

    /// A central extension `p: G ↠ Q` with `Q` acting through lifts.
    pub fn central_extension(p: &GroupHom) -> Result<CrossedModule> {
        if !is_central_extension(p) {
            return Err(Error::InvalidCrossed("not a central extension".into()));
        }
        let (g, q) = (p.source(), p.target());
        let mut lift = vec![usize::MAX; q.order()];
        for x in g.elements().rev() {
            lift[p.apply(x)] = x;
        }
        let act = GroupAction::from_fn(q, g, |b, a| g.conj(lift[b], a))?;
        Self::new(p, &act)
    }

    /// `δ = 0: A → B` with a given action; a crossed module iff `A` is abelian.
    pub fn module(action: &GroupAction) -> Result<CrossedModule> {
        Self::new(&GroupHom::zero(action.space(), action.actor()), action)
    }

    pub fn delta_hom(&self) -> GroupHom {
        GroupHom::new_unchecked(&self.a, &self.b, self.delta.clone())
    }

    pub fn action_obj(&self) -> GroupAction {
        GroupAction::new_unchecked(&self.b, &self.a, self.action.clone())
    }

    pub fn act(&self, b: Elem, a: Elem) -> Elem {
        self.action[b][a]
    }

    /// A pair `(b, a)` with `ᵇa ≠ a`.
    pub fn nontrivial_action_witness(&self) -> Option<(Elem, Elem)> {
        find2(self.b.order(), self.a.order(), |b, a| self.action[b][a] != a).map(|w| (w[0], w[1]))
    }

    /// `A` in degree 1 over `B` in degree 0.
    pub fn to_chain(&self) -> ChainComplex {
        ChainComplex::two_term(&self.delta_hom(), 0)
    }
}

fn precrossed_checks(xm: &CrossedModule, r: &mut AxiomReport) -> bool {
    let (a, b) = (&xm.a, &xm.b);
    if !r.record("delta_hom", hom_witness(a, b, &xm.delta)) {
        return false;
    }
    let (auto, law) = action_witness(b, a, &xm.action);
    if !r.record("action_automorphisms", auto) || !r.record("action_hom", law) {
        return false;
    }
    r.record(
        "equivariance",
        find2(b.order(), a.order(), |g, x| xm.delta[xm.action[g][x]] != b.conj(g, xm.delta[x])),
    )
}

pub fn validate_precrossed(xm: &CrossedModule) -> AxiomReport {
    let mut r = AxiomReport::new("precrossed module");
    precrossed_checks(xm, &mut r);
    r
}

/// Equivariance `δ(ᵇa) = bδ(a)b⁻¹` and Peiffer `^{δ(a)}a' = a a' a⁻¹`,
/// after the table checks.
pub fn validate_crossed_module(xm: &CrossedModule) -> AxiomReport {
    let mut r = AxiomReport::new("crossed module");
    if precrossed_checks(xm, &mut r) {
        let a = &xm.a;
        r.record("peiffer", find2(a.order(), a.order(), |x, y| xm.action[xm.delta[x]][y] != a.conj(x, y)));
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum XmodClass {
    Ab,
    Norm,
    CExt,
    Dis,
    Mod,
}

pub fn classify_crossed_module(xm: &CrossedModule) -> BTreeSet<XmodClass> {
    let mut out = BTreeSet::new();
    let d = xm.delta_hom();
    if xm.b.is_trivial() && xm.a.is_abelian() {
        out.insert(XmodClass::Ab);
    }
    if d.is_injective() && d.image().is_normal() {
        let conj = xm.a.elements().all(|x| xm.b.elements().all(|g| xm.delta[xm.action[g][x]] == xm.b.conj(g, xm.delta[x])));
        if conj {
            out.insert(XmodClass::Norm);
        }
    }
    if d.is_surjective() && d.kernel().is_subset_of(&center(&xm.a)) {
        out.insert(XmodClass::CExt);
    }
    if xm.a.is_trivial() {
        out.insert(XmodClass::Dis);
    }
    if d.is_zero() {
        out.insert(XmodClass::Mod);
    }
    out
}

/// A morphism `(f_A, f_B)` of crossed modules.
#[derive(Clone, Debug)]
pub struct XmodHom {
    pub f_a: GroupHom,
    pub f_b: GroupHom,
}

impl XmodHom {
    pub fn is_zero(&self) -> bool {
        self.f_a.is_zero() && self.f_b.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.f_a.is_iso() && self.f_b.is_iso()
    }
}

/// Visits all morphisms `x → y`: `δ' f_A = f_B δ` and
/// `f_A(ᵇa) = ^{f_B b} f_A(a)`. `visit` returns false to stop.
pub fn for_each_xmod_hom(
    x: &CrossedModule,
    y: &CrossedModule,
    only_iso: bool,
    mut visit: impl FnMut(&XmodHom) -> bool,
) -> Result<()> {
    if only_iso && (x.a.order() != y.a.order() || x.b.order() != y.b.order()) {
        return Ok(());
    }
    let mut fbs = enumerate_homs(&x.b, &y.b)?;
    let mut fas = enumerate_homs(&x.a, &y.a)?;
    if only_iso {
        fbs.retain(GroupHom::is_iso);
        fas.retain(GroupHom::is_iso);
    }
    for fb in &fbs {
        for fa in &fas {
            let commutes = x.a.elements().all(|a| y.delta[fa.apply(a)] == fb.apply(x.delta[a]));
            if !commutes {
                continue;
            }
            let equivariant = x.b.generators().iter().all(|&b| {
                x.a.generators().iter().all(|&a| fa.apply(x.action[b][a]) == y.action[fb.apply(b)][fa.apply(a)])
            });
            if equivariant && !visit(&XmodHom { f_a: fa.clone(), f_b: fb.clone() }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

pub fn find_xmod_iso(x: &CrossedModule, y: &CrossedModule) -> Result<Option<XmodHom>> {
    let mut found = None;
    for_each_xmod_hom(x, y, true, |h| {
        found = Some(h.clone());
        false
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::{alternating, symmetric};

    fn a3_in_s3() -> CrossedModule {
        let s3 = symmetric(3);
        let a3 = crate::group::Subgroup::from_elements(&s3, &[0, 3, 4]).unwrap();
        let (g, incl) = a3.to_group();
        assert_eq!(g.order(), 3);
        CrossedModule::normal_inclusion(&incl).unwrap()
    }

    #[test]
    fn standard_examples() {
        let s3 = symmetric(3);
        assert!(validate_crossed_module(&CrossedModule::conjugation(&s3)).passed());
        let xm = a3_in_s3();
        assert_eq!(classify_crossed_module(&xm), BTreeSet::from([XmodClass::Norm]));
        let c2 = FiniteGroup::cyclic(2);
        let z = CrossedModule::from_parts(&GroupHom::zero(&c2, &c2), &GroupAction::trivial(&c2, &c2));
        assert!(validate_crossed_module(&z).passed());
        let bad = CrossedModule::from_parts(&GroupHom::zero(&s3, &c2), &GroupAction::trivial(&c2, &s3));
        let r = validate_crossed_module(&bad);
        assert!(!r.get("peiffer").unwrap().holds);
        assert!(r.get("equivariance").unwrap().holds);
        assert!(alternating(3).is_abelian());
    }

    #[test]
    fn classes() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let p = GroupHom::from_fn(&c4, &c2, |x| x % 2).unwrap();
        let xm = CrossedModule::central_extension(&p).unwrap();
        assert_eq!(classify_crossed_module(&xm), BTreeSet::from([XmodClass::CExt]));
        let ab = CrossedModule::abelian(&c2).unwrap();
        assert_eq!(classify_crossed_module(&ab), BTreeSet::from([XmodClass::Ab, XmodClass::CExt, XmodClass::Mod]));
        assert!(CrossedModule::abelian(&symmetric(3)).is_err());
        let dis = CrossedModule::discrete(&c2);
        assert!(classify_crossed_module(&dis).contains(&XmodClass::Dis));
    }

    #[test]
    fn isos() {
        let xm = a3_in_s3();
        assert!(find_xmod_iso(&xm, &xm).unwrap().is_some());
        let s3 = CrossedModule::conjugation(&symmetric(3));
        assert!(find_xmod_iso(&xm, &s3).unwrap().is_none());
        let ab = CrossedModule::abelian(&FiniteGroup::cyclic(2)).unwrap();
        let norm = a3_in_s3();
        let mut all_zero = true;
        for_each_xmod_hom(&ab, &norm, false, |h| {
            all_zero &= h.is_zero();
            true
        })
        .unwrap();
        assert!(all_zero);
    }
}
