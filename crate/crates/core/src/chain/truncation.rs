//! The truncation functors `cot_n ⊣ sk_n ⊣ tr_n ⊣ cosk_n` and the primed
//! versions acting below `n`.

use super::{ChainComplex, Factorization};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, GroupHom};

/// Forgets everything above `n`.
pub fn tr(c: &ChainComplex, n: i32) -> ChainComplex {
    if n < c.lo() {
        return ChainComplex::concentrated(&FiniteGroup::trivial(), n);
    }
    c.on_window(c.lo(), n)
}

/// `Sk_n = sk_n tr_n`: the groups above `n` replaced by trivial ones.
pub fn sk(c: &ChainComplex, n: i32) -> ChainComplex {
    tr(c, n)
}

/// `Cosk_n`: keeps degrees `≤ n` and puts `ker δ_n` in degree `n + 1`.
pub fn cosk(c: &ChainComplex, n: i32) -> ChainComplex {
    let lo = c.lo().min(n);
    let mut groups: Vec<FiniteGroup> = (lo..=n).map(|i| c.group(i)).collect();
    let mut diffs: Vec<GroupHom> = (lo + 1..=n).map(|i| c.diff(i)).collect();
    let (kg, incl) = c.kernel(n).to_group();
    groups.push(kg);
    diffs.push(incl);
    ChainComplex::new_unchecked(lo, groups, diffs)
}

/// `cot_n`: degree `n` becomes `M_n / δ_{n+1}(M_{n+1})`, nothing above.
pub fn cot(c: &ChainComplex, n: i32) -> Result<ChainComplex> {
    let img = c.image(n + 1);
    if let Err(Error::NotNormal { conjugator, element }) = img.check_normal() {
        return Err(Error::NotProper { degree: n + 1, conjugator, element });
    }
    let q = quotient(&c.group(n), &img)?;
    let lo = c.lo().min(n);
    let mut groups: Vec<FiniteGroup> = (lo..n).map(|i| c.group(i)).collect();
    let mut diffs: Vec<GroupHom> = (lo + 1..n).map(|i| c.diff(i)).collect();
    if n > lo {
        let d = c.diff(n);
        diffs.push(GroupHom::from_fn_unchecked(&q.group, &c.group(n - 1), |i| d.apply(q.reps[i])));
    }
    groups.push(q.group);
    Ok(ChainComplex::new_unchecked(lo, groups, diffs))
}

/// Forgets everything below `n`.
pub fn tr_prime(c: &ChainComplex, n: i32) -> ChainComplex {
    if n > c.hi() {
        return ChainComplex::concentrated(&FiniteGroup::trivial(), n);
    }
    c.on_window(n, c.hi())
}

/// `Sk'_n`: the groups below `n` replaced by trivial ones.
pub fn sk_prime(c: &ChainComplex, n: i32) -> ChainComplex {
    tr_prime(c, n)
}

/// `cot'_n`: degree `n` becomes `ker δ_n`, nothing below.
pub fn cot_prime(c: &ChainComplex, n: i32) -> ChainComplex {
    let ker = c.kernel(n);
    let (kg, _) = ker.to_group();
    let hi = c.hi().max(n);
    let mut groups = vec![kg.clone()];
    let mut diffs = Vec::new();
    if hi > n {
        diffs.push(c.diff(n + 1).corestrict(&ker, &kg));
    }
    for i in n + 1..=hi {
        groups.push(c.group(i));
        if i > n + 1 {
            diffs.push(c.diff(i));
        }
    }
    ChainComplex::new_unchecked(n, groups, diffs)
}

pub(crate) fn image_factor(c: &ChainComplex, n: i32) -> Factorization {
    Factorization::of(&c.diff(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> FiniteGroup {
        FiniteGroup::cyclic(4)
    }

    #[test]
    fn sk0_of_degree0() {
        let c2 = FiniteGroup::cyclic(2);
        let c = ChainComplex::concentrated(&c2, 0);
        assert_eq!(sk(&c, 0).trimmed().orders(), vec![2]);
    }

    #[test]
    fn cot1_kills_surjective_image() {
        let c2 = FiniteGroup::cyclic(2);
        let proj = GroupHom::from_fn(&c4(), &c2, |x| x % 2).unwrap();
        let c = ChainComplex::two_term(&proj, 1);
        let t = cot(&c, 1).unwrap();
        assert_eq!(t.hi(), 1);
        assert_eq!(t.order(1), 1);
        let t0 = cot(&c, 2).unwrap();
        assert_eq!(t0.order(2), 4);
    }

    #[test]
    fn cosk1_of_zero_map() {
        let c2 = FiniteGroup::cyclic(2);
        let c = ChainComplex::two_term(&GroupHom::zero(&c2, &c2), 0);
        let k = cosk(&c, 1);
        assert_eq!(k.order(2), 2);
        assert!(ChainComplex::new(k.lo(), k.groups().to_vec(), k.diffs().to_vec()).is_ok());
    }

    #[test]
    fn primed() {
        let c2 = FiniteGroup::cyclic(2);
        let proj = GroupHom::from_fn(&c4(), &c2, |x| x % 2).unwrap();
        let c = ChainComplex::two_term(&proj, 0);
        assert_eq!(tr_prime(&c, 1).trimmed().orders(), vec![4]);
        let k = cot_prime(&c, 1);
        assert_eq!((k.lo(), k.orders()), (1, vec![2]));
        assert_eq!(tr(&c, 0).orders(), vec![2]);
        assert!(tr(&c, -1).is_zero());
    }
}
