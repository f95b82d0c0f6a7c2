use std::fmt;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::group::{enumerate_homs, GroupHom};

/// Degreewise homs commuting with the differentials, stored on the union
/// of the two windows.
#[derive(Clone)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i32,
    comps: Vec<GroupHom>,
}

fn union_window(a: &ChainComplex, b: &ChainComplex) -> (i32, i32) {
    (a.lo().min(b.lo()), a.hi().max(b.hi()))
}

impl ChainMap {
    /// `comps[k]` is the component in degree `lo + k` of the union window.
    pub fn new(source: &ChainComplex, target: &ChainComplex, comps: Vec<GroupHom>) -> Result<ChainMap> {
        let (lo, hi) = union_window(source, target);
        if comps.len() as i32 != hi - lo + 1 {
            return Err(Error::Malformed(format!("chain map needs {} components", hi - lo + 1)));
        }
        for (k, f) in comps.iter().enumerate() {
            let n = lo + k as i32;
            if f.source() != &source.group(n) || f.target() != &target.group(n) {
                return Err(Error::Malformed(format!("component {n} has the wrong endpoints")));
            }
        }
        let map = ChainMap { source: source.clone(), target: target.clone(), lo, comps };
        map.check_commutes()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: &ChainComplex, target: &ChainComplex, comps: Vec<GroupHom>) -> ChainMap {
        let (lo, _) = union_window(source, target);
        ChainMap { source: source.clone(), target: target.clone(), lo, comps }
    }

    /// Builds from a per-degree function over the union window.
    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        f: impl Fn(i32) -> GroupHom,
    ) -> Result<ChainMap> {
        let (lo, hi) = union_window(source, target);
        Self::new(source, target, (lo..=hi).map(f).collect())
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = (c.lo()..=c.hi()).map(|n| GroupHom::identity(&c.group(n))).collect();
        Self::new_unchecked(c, c, comps)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        let (lo, hi) = union_window(source, target);
        let comps = (lo..=hi).map(|n| GroupHom::zero(&source.group(n), &target.group(n))).collect();
        Self::new_unchecked(source, target, comps)
    }

    fn check_commutes(&self) -> Result<()> {
        let hi = self.lo + self.comps.len() as i32 - 1;
        for n in self.lo..=hi + 1 {
            let f = self.component(n);
            let g = self.component(n - 1);
            let ds = self.source.diff(n);
            let dt = self.target.diff(n);
            if let Some(x) = self.source.group(n).elements().find(|&x| dt.apply(f.apply(x)) != g.apply(ds.apply(x))) {
                return Err(Error::NotAChainMap { degree: n, element: x });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i32) -> GroupHom {
        let hi = self.lo + self.comps.len() as i32 - 1;
        if n >= self.lo && n <= hi {
            self.comps[(n - self.lo) as usize].clone()
        } else {
            GroupHom::zero(&self.source.group(n), &self.target.group(n))
        }
    }

    pub fn components(&self) -> &[GroupHom] {
        &self.comps
    }

    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.lo + self.comps.len() as i32 - 1)
    }

    /// `next ∘ self`
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        let (lo, hi) = union_window(&self.source, &next.target);
        let comps = (lo..=hi).map(|n| self.component(n).then(&next.component(n))).collect();
        Self::new_unchecked(&self.source, &next.target, comps)
    }

    /// Degree of a nonzero component with a witness element.
    pub fn nonzero_witness(&self) -> Option<(i32, usize)> {
        self.comps.iter().enumerate().find_map(|(k, f)| f.nonzero_witness().map(|x| (self.lo + k as i32, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_witness().is_none()
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(GroupHom::is_injective)
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(GroupHom::is_surjective)
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(GroupHom::is_iso)
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

/// `0 → A →ι X →π B → 0` in chain complexes.
#[derive(Clone, Debug)]
pub struct ChainSES {
    pub sub: ChainComplex,
    pub middle: ChainComplex,
    pub quotient: ChainComplex,
    pub iota: ChainMap,
    pub pi: ChainMap,
}

impl ChainSES {
    pub fn new(iota: ChainMap, pi: ChainMap) -> Result<ChainSES> {
        let ses = ChainSES {
            sub: iota.source().clone(),
            middle: iota.target().clone(),
            quotient: pi.target().clone(),
            iota,
            pi,
        };
        ses.verify()?;
        Ok(ses)
    }

    /// Degreewise: ι injective with normal image, π surjective,
    /// im ι = ker π; both maps commute with the differentials.
    pub fn verify(&self) -> Result<()> {
        self.iota.check_commutes().map_err(|e| Error::NotExact { degree: degree_of(&e), reason: format!("ι: {e}") })?;
        self.pi.check_commutes().map_err(|e| Error::NotExact { degree: degree_of(&e), reason: format!("π: {e}") })?;
        let lo = self.sub.lo().min(self.middle.lo()).min(self.quotient.lo());
        let hi = self.sub.hi().max(self.middle.hi()).max(self.quotient.hi());
        for n in lo..=hi {
            let i = self.iota.component(n);
            let p = self.pi.component(n);
            let fail = |reason: &str| Err(Error::NotExact { degree: n, reason: reason.to_string() });
            if !i.is_injective() {
                return fail("ι is not injective");
            }
            if !p.is_surjective() {
                return fail("π is not surjective");
            }
            let img = i.image();
            if !img.is_normal() {
                return fail("image of ι is not normal");
            }
            if img != p.kernel() {
                return fail("image of ι differs from kernel of π");
            }
        }
        Ok(())
    }
}

fn degree_of(e: &Error) -> i32 {
    match e {
        Error::NotAChainMap { degree, .. } => *degree,
        _ => 0,
    }
}

/// Visits every chain map `a → b` (degree-by-degree backtracking over
/// enumerated homs); `visit` returns false to stop.
pub fn for_each_chain_hom(
    a: &ChainComplex,
    b: &ChainComplex,
    only_iso: bool,
    mut visit: impl FnMut(&ChainMap) -> bool,
) -> Result<()> {
    let (lo, hi) = union_window(a, b);
    let mut options: Vec<Vec<GroupHom>> = Vec::new();
    for n in lo..=hi {
        let (s, t) = (a.group(n), b.group(n));
        if only_iso && s.order() != t.order() {
            return Ok(());
        }
        let mut homs = enumerate_homs(&s, &t)?;
        if only_iso {
            homs.retain(GroupHom::is_iso);
        }
        options.push(homs);
    }
    let mut chosen: Vec<GroupHom> = Vec::with_capacity(options.len());
    backtrack(a, b, lo, &options, &mut chosen, &mut visit);
    Ok(())
}

fn backtrack(
    a: &ChainComplex,
    b: &ChainComplex,
    lo: i32,
    options: &[Vec<GroupHom>],
    chosen: &mut Vec<GroupHom>,
    visit: &mut impl FnMut(&ChainMap) -> bool,
) -> bool {
    let k = chosen.len();
    if k == options.len() {
        let map = ChainMap::new_unchecked(a, b, chosen.clone());
        debug_assert!(map.check_commutes().is_ok());
        return visit(&map);
    }
    let n = lo + k as i32;
    let da = a.diff(n);
    let db = b.diff(n);
    for f in &options[k] {
        let ok = match chosen.last() {
            Some(g) => a.group(n).elements().all(|x| db.apply(f.apply(x)) == g.apply(da.apply(x))),
            None => a.group(n).elements().all(|x| db.apply(f.apply(x)) == 0),
        };
        if !ok {
            continue;
        }
        chosen.push(f.clone());
        let go_on = backtrack(a, b, lo, options, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

pub fn chain_homs(a: &ChainComplex, b: &ChainComplex) -> Result<Vec<ChainMap>> {
    let mut out = Vec::new();
    for_each_chain_hom(a, b, false, |f| {
        out.push(f.clone());
        true
    })?;
    Ok(out)
}

/// A degreewise-bijective chain map `a → b`, if one exists.
pub fn find_chain_iso(a: &ChainComplex, b: &ChainComplex) -> Result<Option<ChainMap>> {
    let mut found = None;
    for_each_chain_hom(a, b, true, |f| {
        found = Some(f.clone());
        false
    })?;
    Ok(found)
}

/// The degreewise image of `f` as a complex `I`, with `f = m ∘ e`.
pub fn image_factorization(f: &ChainMap) -> Result<(ChainComplex, ChainMap, ChainMap)> {
    let (lo, hi) = f.window();
    let subs: Vec<_> = (lo..=hi).map(|n| f.component(n).image()).collect();
    let made: Vec<_> = subs.iter().map(|s| s.to_group()).collect();
    let groups: Vec<_> = made.iter().map(|(g, _)| g.clone()).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let k = (n - lo) as usize;
            let d = f.target().diff(n);
            let below = &subs[k - 1];
            let map = subs[k]
                .elements()
                .iter()
                .map(|&x| below.position(d.apply(x)).expect("images are closed under the differential"))
                .collect();
            GroupHom::new_unchecked(&groups[k], &groups[k - 1], map)
        })
        .collect();
    let image = ChainComplex::new(lo, groups, diffs)?;
    let e = ChainMap::from_fn(f.source(), &image, |n| {
        let k = (n - lo) as usize;
        f.component(n).corestrict(&subs[k], &made[k].0)
    })?;
    let m = ChainMap::from_fn(&image, f.target(), |n| made[(n - lo) as usize].1.clone())?;
    Ok((image, e, m))
}

/// The unique `λ` with `t ∘ λ = a` for a degreewise injective `t`, or the
/// degree and element where `a` leaves the image of `t`.
pub fn lift_through_mono(a: &ChainMap, t: &ChainMap) -> Result<std::result::Result<ChainMap, (i32, usize)>> {
    let src = a.source();
    let (lo, hi) = union_window(src, t.source());
    let mut comps = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let tn = t.component(n);
        let mut back = vec![usize::MAX; tn.target().order()];
        for y in tn.source().elements() {
            back[tn.apply(y)] = y;
        }
        let an = a.component(n);
        let mut map = Vec::with_capacity(an.source().order());
        for x in an.source().elements() {
            match back[an.apply(x)] {
                usize::MAX => return Ok(Err((n, x))),
                y => map.push(y),
            }
        }
        comps.push(GroupHom::new(&src.group(n), &t.source().group(n), map)?);
    }
    Ok(Ok(ChainMap::new(src, t.source(), comps)?))
}

/// The unique `μ` with `μ ∘ g = b` for a degreewise surjective `g`, or the
/// degree and element where `b` is not constant on a fibre of `g`.
pub fn descend_through_epi(b: &ChainMap, g: &ChainMap) -> Result<std::result::Result<ChainMap, (i32, usize)>> {
    let tgt = b.target();
    let (lo, hi) = union_window(g.target(), tgt);
    let mut comps = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let (gn, bn) = (g.component(n), b.component(n));
        let mut map = vec![usize::MAX; gn.target().order()];
        for x in gn.source().elements() {
            let slot = &mut map[gn.apply(x)];
            if *slot == usize::MAX {
                *slot = bn.apply(x);
            } else if *slot != bn.apply(x) {
                return Ok(Err((n, x)));
            }
        }
        if let Some(y) = map.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Malformed(format!("component {n} of the epimorphism misses {y}")));
        }
        comps.push(GroupHom::new(&g.target().group(n), &tgt.group(n), map)?);
    }
    Ok(Ok(ChainMap::new(g.target(), tgt, comps)?))
}

/// `(n, x)` with `x ∈ im a_n` outside `im b_n`, for two maps into the same
/// complex.
pub fn image_containment_witness(a: &ChainMap, b: &ChainMap) -> Option<(i32, usize)> {
    let (lo, hi) = a.window();
    (lo..=hi).find_map(|n| {
        let ib = b.component(n).image();
        a.component(n).image().elements().iter().find(|&&x| !ib.contains(x)).map(|&x| (n, x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn iso_search() {
        let c2 = FiniteGroup::cyclic(2);
        let c4 = FiniteGroup::cyclic(4);
        let p = GroupHom::from_fn(&c4, &c2, |x| x % 2).unwrap();
        let a = ChainComplex::two_term(&p, 0);
        let b = ChainComplex::two_term(&p, 0);
        let iso = find_chain_iso(&a, &b).unwrap().unwrap();
        assert!(iso.is_iso());
        let z = ChainComplex::two_term(&GroupHom::zero(&c4, &c2), 0);
        assert!(find_chain_iso(&a, &z).unwrap().is_none());
    }

    #[test]
    fn hom_counts() {
        let c2 = FiniteGroup::cyclic(2);
        let id = ChainComplex::two_term(&GroupHom::identity(&c2), 0);
        let dis = ChainComplex::concentrated(&c2, 0);
        // chain maps id-complex → C2 in degree 0: f_0 arbitrary, f_1 = 0,
        // commutation forces f_0 ∘ id = 0
        assert_eq!(chain_homs(&id, &dis).unwrap().len(), 1);
        // C2 in degree 0 → id-complex: f_0 any, f_1 = 0: δ f_1 = 0 = f_0 δ
        assert_eq!(chain_homs(&dis, &id).unwrap().len(), 2);
        assert_eq!(chain_homs(&id, &id).unwrap().len(), 2);
    }

    #[test]
    fn commuting_is_checked() {
        let c2 = FiniteGroup::cyclic(2);
        let id = ChainComplex::two_term(&GroupHom::identity(&c2), 0);
        let dis = ChainComplex::concentrated(&c2, 0);
        let bad = ChainMap::new(&id, &dis, vec![GroupHom::identity(&c2), GroupHom::zero(&c2, &FiniteGroup::trivial())]);
        assert!(matches!(bad, Err(Error::NotAChainMap { degree: 1, .. })));
    }
}
