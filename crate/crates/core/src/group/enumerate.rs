use std::collections::HashSet;

use super::subgroup::Closure;
use super::{Elem, FiniteGroup, GroupHom, Subgroup};
use crate::budget::{self, Budget};
use crate::error::Result;

const UNSET: usize = usize::MAX;

/// All homomorphisms `a → b` under the process-wide budget.
pub fn enumerate_homs(a: &FiniteGroup, b: &FiniteGroup) -> Result<Vec<GroupHom>> {
    enumerate_homs_with(a, b, budget::current())
}

/// Backtracks over images of the greedy generators of `a`. Each choice is
/// propagated along right multiplication by the generators chosen so far,
/// so conflicting choices are pruned before the next generator is tried.
pub fn enumerate_homs_with(a: &FiniteGroup, b: &FiniteGroup, budget: &Budget) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    search_homs(a, b, budget, |_, _| true, |f| {
        out.push(f);
        true
    })?;
    Ok(out)
}

/// Drives the search, filtering generator images with `allow(i, image)` and
/// stopping early when `visit` returns false.
pub(crate) fn search_homs(
    a: &FiniteGroup,
    b: &FiniteGroup,
    budget: &Budget,
    allow: impl Fn(usize, Elem) -> bool,
    mut visit: impl FnMut(GroupHom) -> bool,
) -> Result<()> {
    budget.check_order("hom enumeration source", a.order())?;
    let gens = a.generators().to_vec();
    let mut candidates: Vec<Vec<Elem>> = Vec::with_capacity(gens.len());
    let mut space: u128 = 1;
    for (i, &g) in gens.iter().enumerate() {
        let k = a.element_order(g);
        let c: Vec<Elem> = b.elements().filter(|&y| k.is_multiple_of(b.element_order(y)) && allow(i, y)).collect();
        space = space.saturating_mul(c.len() as u128);
        candidates.push(c);
    }
    budget.check_candidates("hom enumeration", space)?;
    if space == 0 {
        return Ok(());
    }
    let mut state = Search { a, b, gens: &gens, map: vec![UNSET; a.order()], order: vec![0] };
    state.map[0] = 0;
    state.run(0, &candidates, &mut visit);
    Ok(())
}

struct Search<'a> {
    a: &'a FiniteGroup,
    b: &'a FiniteGroup,
    gens: &'a [Elem],
    map: Vec<Elem>,
    /// Elements with a defined image, in discovery order.
    order: Vec<Elem>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, candidates: &[Vec<Elem>], visit: &mut impl FnMut(GroupHom) -> bool) -> bool {
        if depth == self.gens.len() {
            let f = GroupHom::new_unchecked(self.a, self.b, self.map.clone());
            return visit(f);
        }
        for &y in &candidates[depth] {
            let mark = self.order.len();
            if self.extend(depth, y) && !self.run(depth + 1, candidates, visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for &x in &self.order[mark..] {
            self.map[x] = UNSET;
        }
        self.order.truncate(mark);
    }

    /// Assigns generator `depth ↦ y` and closes; false on conflict.
    fn extend(&mut self, depth: usize, y: Elem) -> bool {
        let g = self.gens[depth];
        let old = self.order.len();
        for i in 0..old {
            let x = self.order[i];
            if !self.set(self.a.mul(x, g), self.b.mul(self.map[x], y)) {
                return false;
            }
        }
        let mut i = old;
        while i < self.order.len() {
            let x = self.order[i];
            for j in 0..=depth {
                let gj = self.gens[j];
                let img = self.map[gj];
                if !self.set(self.a.mul(x, gj), self.b.mul(self.map[x], img)) {
                    return false;
                }
            }
            i += 1;
        }
        self.map[g] == y
    }

    fn set(&mut self, x: Elem, y: Elem) -> bool {
        match self.map[x] {
            UNSET => {
                self.map[x] = y;
                self.order.push(x);
                true
            }
            z => z == y,
        }
    }
}

pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<GroupHom>> {
    let gens = g.generators().to_vec();
    let mut out = Vec::new();
    search_homs(
        g,
        g,
        budget::current(),
        |i, y| g.element_order(y) == g.element_order(gens[i]),
        |f| {
            if f.is_iso() {
                out.push(f);
            }
            true
        },
    )?;
    Ok(out)
}

/// Every subgroup, by closing each known subgroup with one more element.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    budget::current().check_order("subgroup lattice", g.order())?;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut out: Vec<(Vec<Elem>, Subgroup)> = Vec::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(mask_of(&trivial));
    let mut queue = vec![(vec![], trivial)];
    while let Some((gens, h)) = queue.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut c = Closure::new(g);
            for &s in &gens {
                c.add_generator(s);
            }
            c.add_generator(x);
            let k = c.finish();
            if seen.insert(mask_of(&k)) {
                let mut kg = gens.clone();
                kg.push(x);
                queue.push((kg, k));
            }
        }
        out.push((gens, h));
    }
    let mut subs: Vec<Subgroup> = out.into_iter().map(|(_, h)| h).collect();
    subs.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements().cmp(y.elements())));
    Ok(subs)
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g)?.into_iter().filter(Subgroup::is_normal).collect())
}

fn mask_of(h: &Subgroup) -> Vec<bool> {
    h.parent().elements().map(|x| h.contains(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    /// Every function `a → b` filtered by the hom law.
    fn brute_force(a: &FiniteGroup, b: &FiniteGroup) -> Vec<Vec<Elem>> {
        let (n, m) = (a.order(), b.order());
        let mut out = Vec::new();
        let mut f = vec![0usize; n];
        loop {
            let ok = (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])));
            if ok {
                out.push(f.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                f[i] += 1;
                if f[i] < m {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn spec_counts() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let s3 = library::symmetric(3);
        assert_eq!(enumerate_homs(&c2, &c3).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&c2, &c2).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&s3, &c2).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&s3, &s3).unwrap().len(), 10);
    }

    #[test]
    fn matches_brute_force_small() {
        let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), library::klein(), library::symmetric(3)];
        for a in &groups {
            for b in &groups {
                if a.order() > 4 && b.order() > 4 {
                    continue;
                }
                let mut got: Vec<Vec<Elem>> =
                    enumerate_homs(a, b).unwrap().iter().map(|f| f.map().to_vec()).collect();
                got.sort();
                let mut want = brute_force(a, b);
                want.sort();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FiniteGroup::cyclic(2)).unwrap().len(), 1);
        assert_eq!(automorphisms(&FiniteGroup::cyclic(3)).unwrap().len(), 2);
        assert_eq!(automorphisms(&library::klein()).unwrap().len(), 6);
        assert_eq!(automorphisms(&library::quaternion()).unwrap().len(), 24);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&library::symmetric(3)).unwrap().len(), 6);
        assert_eq!(normal_subgroups(&library::symmetric(3)).unwrap().len(), 3);
        assert_eq!(all_subgroups(&library::dihedral(4)).unwrap().len(), 10);
        assert_eq!(normal_subgroups(&library::alternating(4)).unwrap().len(), 3);
    }

    #[test]
    fn budget_refuses() {
        let b = Budget { max_order: 2, ..Budget::default() };
        assert!(enumerate_homs_with(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3), &b).is_err());
        let b = Budget { max_candidates: 1, ..Budget::default() };
        assert!(enumerate_homs_with(&library::klein(), &library::klein(), &b).is_err());
    }
}
