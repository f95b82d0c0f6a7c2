use super::subgroup::normal_closure;
use super::{Elem, FiniteGroup, GroupAction, GroupHom, Subgroup, TABLE_LIMIT};
use crate::error::{Error, Result};

pub struct DirectProduct {
    pub group: FiniteGroup,
    pub projections: Vec<GroupHom>,
    pub injections: Vec<GroupHom>,
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> DirectProduct {
    direct_product_of(&[a.clone(), b.clone()])
}

pub fn direct_product_of(factors: &[FiniteGroup]) -> DirectProduct {
    let group = FiniteGroup::product_of(factors.to_vec());
    let mut projections = Vec::with_capacity(factors.len());
    let mut injections = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        projections.push(GroupHom::from_fn_unchecked(&group, f, |x| group.decode(x)[i]));
        injections.push(GroupHom::from_fn_unchecked(f, &group, |y| {
            let mut c = vec![0; factors.len()];
            c[i] = y;
            group.encode(&c)
        }));
    }
    DirectProduct { group, projections, injections }
}

/// `Gⁿ`; the zeroth power is the trivial group.
pub fn direct_power(g: &FiniteGroup, n: usize) -> FiniteGroup {
    match n {
        0 => FiniteGroup::trivial(),
        1 => g.clone(),
        _ => FiniteGroup::product_of(vec![g.clone(); n]),
    }
}

pub struct Semidirect {
    /// `A ⋊ B`, element `(a, b)` at index `a + |A|·b`.
    pub group: FiniteGroup,
    pub inj_a: GroupHom,
    pub inj_b: GroupHom,
    pub proj_b: GroupHom,
}

/// `(a, b)(a', b') = (a · ᵇa', b b')`.
pub fn semidirect_product(a: &FiniteGroup, b: &FiniteGroup, act: &GroupAction) -> Result<Semidirect> {
    if act.actor() != b || act.space() != a {
        return Err(Error::InvalidAction { reason: "action does not match factors".into(), witness: vec![] });
    }
    let na = a.order();
    let order = na * b.order();
    if order > TABLE_LIMIT * 4 {
        return Err(Error::BudgetExceeded { what: "semidirect product".into(), needed: order as u128, limit: (TABLE_LIMIT * 4) as u128 });
    }
    let group = FiniteGroup::from_fn(order, |x, y| {
        let (xa, xb) = (x % na, x / na);
        let (ya, yb) = (y % na, y / na);
        a.mul(xa, act.act(xb, ya)) + na * b.mul(xb, yb)
    });
    let inj_a = GroupHom::from_fn_unchecked(a, &group, |x| x);
    let inj_b = GroupHom::from_fn_unchecked(b, &group, |y| na * y);
    let proj_b = GroupHom::from_fn_unchecked(&group, b, |x| x / na);
    Ok(Semidirect { group, inj_a, inj_b, proj_b })
}

pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// Minimal coset representatives, ascending; `reps[i]` names coset `i`.
    pub reps: Vec<Elem>,
}

/// `G/N` with cosets named by their minimum element.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if n.parent() != g {
        return Err(Error::MismatchedParent);
    }
    n.check_normal()?;
    if n.is_trivial() {
        return Ok(Quotient { group: g.clone(), projection: GroupHom::identity(g), reps: g.elements().collect() });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in n.elements() {
            coset[g.mul(x, h)] = id;
        }
    }
    let group = FiniteGroup::from_fn(reps.len(), |i, j| coset[g.mul(reps[i], reps[j])]);
    let projection = GroupHom::new_unchecked(g, &group, coset);
    Ok(Quotient { group, projection, reps })
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    Subgroup::from_predicate(g, |x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// `G' = ⟨[a, b]⟩`, the normal closure of commutators of generators.
pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for &a in gens {
        for &b in gens {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure(g, &seeds)
}

/// Surjective with kernel inside the center of the source.
pub fn is_central_extension(f: &GroupHom) -> bool {
    f.is_surjective() && f.kernel().is_subset_of(&center(f.source()))
}
