//! Chain complexes of finite groups on an integer degree window.
//!
//! A complex stores `M_lo ..= M_hi` and the differentials
//! `δ_n : M_n → M_{n-1}` for `lo < n ≤ hi`; every group outside the window is
//! trivial and every differential touching it is zero.

mod decompose;
mod map;
mod truncation;

use std::fmt;
use std::sync::Arc;

pub use decompose::{
    classify_chain, mu_geq, mu_ngeq, torsion_decompose, ttf_decompose, ChainClass, Theory, TtfReport,
};
pub use map::{
    chain_homs, descend_through_epi, find_chain_iso, for_each_chain_hom, image_containment_witness, image_factorization,
    lift_through_mono, ChainMap, ChainSES,
};
pub use truncation::{cosk, cot, cot_prime, sk, sk_prime, tr, tr_prime};

use crate::error::{Error, Result};
use crate::group::{quotient, Elem, FiniteGroup, GroupHom, Subgroup};

#[derive(Clone)]
pub struct ChainComplex {
    inner: Arc<Inner>,
}

struct Inner {
    lo: i32,
    groups: Vec<FiniteGroup>,
    /// `diffs[k] = δ_{lo+k+1}`
    diffs: Vec<GroupHom>,
}

impl ChainComplex {
    /// Validates endpoints and `δ_{n-1} ∘ δ_n = 0`.
    pub fn new(lo: i32, groups: Vec<FiniteGroup>, diffs: Vec<GroupHom>) -> Result<ChainComplex> {
        if groups.is_empty() {
            return Err(Error::Malformed("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(Error::Malformed(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let n = lo + k as i32 + 1;
            if d.source() != &groups[k + 1] || d.target() != &groups[k] {
                return Err(Error::Malformed(format!("differential δ_{n} has the wrong endpoints")));
            }
        }
        for k in 1..diffs.len() {
            let (upper, lower) = (&diffs[k], &diffs[k - 1]);
            if let Some(x) = upper.source().elements().find(|&x| lower.apply(upper.apply(x)) != 0) {
                return Err(Error::CompositeNotZero { degree: lo + k as i32 + 1, element: x });
            }
        }
        Ok(Self::new_unchecked(lo, groups, diffs))
    }

    pub(crate) fn new_unchecked(lo: i32, groups: Vec<FiniteGroup>, diffs: Vec<GroupHom>) -> ChainComplex {
        debug_assert_eq!(groups.len(), diffs.len() + 1);
        ChainComplex { inner: Arc::new(Inner { lo, groups, diffs }) }
    }

    pub fn zero() -> ChainComplex {
        Self::concentrated(&FiniteGroup::trivial(), 0)
    }

    /// `G` in degree `n`, trivial elsewhere.
    pub fn concentrated(g: &FiniteGroup, n: i32) -> ChainComplex {
        Self::new_unchecked(n, vec![g.clone()], vec![])
    }

    /// `δ : M_{n+1} → M_n`, a two-term complex.
    pub fn two_term(d: &GroupHom, n: i32) -> ChainComplex {
        Self::new_unchecked(n, vec![d.target().clone(), d.source().clone()], vec![d.clone()])
    }

    pub fn lo(&self) -> i32 {
        self.inner.lo
    }

    pub fn hi(&self) -> i32 {
        self.inner.lo + self.inner.groups.len() as i32 - 1
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.inner.groups
    }

    pub fn diffs(&self) -> &[GroupHom] {
        &self.inner.diffs
    }

    pub fn in_window(&self, n: i32) -> bool {
        n >= self.lo() && n <= self.hi()
    }

    pub fn group(&self, n: i32) -> FiniteGroup {
        if self.in_window(n) {
            self.inner.groups[(n - self.lo()) as usize].clone()
        } else {
            FiniteGroup::trivial()
        }
    }

    pub fn order(&self, n: i32) -> usize {
        if self.in_window(n) {
            self.inner.groups[(n - self.lo()) as usize].order()
        } else {
            1
        }
    }

    /// `δ_n : M_n → M_{n-1}`
    pub fn diff(&self, n: i32) -> GroupHom {
        if n > self.lo() && n <= self.hi() {
            self.inner.diffs[(n - self.lo() - 1) as usize].clone()
        } else {
            GroupHom::zero(&self.group(n), &self.group(n - 1))
        }
    }

    /// Smallest and largest degrees carrying a nontrivial group.
    pub fn support(&self) -> Option<(i32, i32)> {
        let deg: Vec<i32> = (self.lo()..=self.hi()).filter(|&n| self.order(n) > 1).collect();
        Some((*deg.first()?, *deg.last()?))
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    /// The same complex on the window shrunk to its support.
    pub fn trimmed(&self) -> ChainComplex {
        match self.support() {
            None => ChainComplex::zero(),
            Some((a, b)) => self.on_window(a, b),
        }
    }

    /// The same complex stored on `[a, b]`; degrees outside the current
    /// window are filled with trivial groups, degrees dropped must be trivial
    /// for the result to be the same complex.
    pub fn on_window(&self, a: i32, b: i32) -> ChainComplex {
        let groups = (a..=b).map(|n| self.group(n)).collect();
        let diffs = (a + 1..=b).map(|n| self.diff(n)).collect();
        Self::new_unchecked(a, groups, diffs)
    }

    pub fn kernel(&self, n: i32) -> Subgroup {
        self.diff(n).kernel()
    }

    /// `δ_n(M_n)` as a subgroup of `M_{n-1}`.
    pub fn image(&self, n: i32) -> Subgroup {
        self.diff(n).image()
    }

    /// First degree whose differential image is not normal, with witness.
    pub fn properness_witness(&self) -> Option<(i32, Elem, Elem)> {
        for n in self.lo() + 1..=self.hi() {
            if let Err(Error::NotNormal { conjugator, element }) = self.image(n).check_normal() {
                return Some((n, conjugator, element));
            }
        }
        None
    }

    pub fn check_proper(&self) -> Result<()> {
        match self.properness_witness() {
            Some((degree, conjugator, element)) => Err(Error::NotProper { degree, conjugator, element }),
            None => Ok(()),
        }
    }

    pub fn is_proper(&self) -> bool {
        self.properness_witness().is_none()
    }

    /// First non-commuting pair in a degree of the window.
    pub fn abelian_witness(&self) -> Option<(i32, Elem, Elem)> {
        for n in self.lo()..=self.hi() {
            if let Some((a, b)) = self.group(n).noncommuting_pair() {
                return Some((n, a, b));
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    /// `H_n = ker δ_n / im δ_{n+1}`.
    pub fn homology(&self, n: i32) -> Result<FiniteGroup> {
        let ker = self.kernel(n);
        let (kg, _) = ker.to_group();
        let img = self.image(n + 1);
        let inside: Vec<Elem> = img
            .elements()
            .iter()
            .map(|&x| ker.position(x).expect("δ∘δ = 0 puts the image in the kernel"))
            .collect();
        let sub = Subgroup::from_elements(&kg, &inside)?;
        match sub.check_normal() {
            Ok(()) => Ok(quotient(&kg, &sub)?.group),
            Err(Error::NotNormal { conjugator, element }) => Err(Error::NotProper {
                degree: n + 1,
                conjugator: ker.elements()[conjugator],
                element: ker.elements()[element],
            }),
            Err(e) => Err(e),
        }
    }

    /// Orders of `M_lo ..= M_hi`.
    pub fn orders(&self) -> Vec<usize> {
        self.inner.groups.iter().map(FiniteGroup::order).collect()
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(lo={}, orders={:?})", self.lo(), self.orders())
    }
}

/// The normal-epi / mono factorization `δ_n = m_n ∘ e_n`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub image: Subgroup,
    pub image_group: FiniteGroup,
    pub epi: GroupHom,
    pub mono: GroupHom,
}

impl Factorization {
    pub fn of(d: &GroupHom) -> Factorization {
        let image = d.image();
        let (image_group, mono) = image.to_group();
        let epi = d.corestrict(&image, &image_group);
        Factorization { image, image_group, epi, mono }
    }
}

/// A chain complex whose differential images are all normal, with the
/// factorizations of every differential cached.
#[derive(Clone, Debug)]
pub struct ProperChainComplex {
    chain: ChainComplex,
    /// factorization of `δ_n` for `lo ≤ n ≤ hi + 1`
    factors: Vec<Factorization>,
}

impl ProperChainComplex {
    pub fn new(chain: ChainComplex) -> Result<ProperChainComplex> {
        chain.check_proper()?;
        let factors = (chain.lo()..=chain.hi() + 1).map(|n| Factorization::of(&chain.diff(n))).collect();
        Ok(ProperChainComplex { chain, factors })
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn into_chain(self) -> ChainComplex {
        self.chain
    }

    pub fn factorization(&self, n: i32) -> Factorization {
        let lo = self.chain.lo();
        if n >= lo && n <= self.chain.hi() + 1 {
            self.factors[(n - lo) as usize].clone()
        } else {
            Factorization::of(&self.chain.diff(n))
        }
    }
}

impl std::ops::Deref for ProperChainComplex {
    type Target = ChainComplex;
    fn deref(&self) -> &ChainComplex {
        &self.chain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    fn proj_c4_c2() -> GroupHom {
        GroupHom::from_fn(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2), |x| x % 2).unwrap()
    }

    #[test]
    fn validation() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(ChainComplex::new(0, vec![c2.clone()], vec![]).is_ok());
        let id = GroupHom::identity(&c2);
        let err = ChainComplex::new(0, vec![c2.clone(), c2.clone(), c2.clone()], vec![id.clone(), id.clone()])
            .unwrap_err();
        assert!(matches!(err, Error::CompositeNotZero { degree: 2, element: 1 }));
        let c4 = FiniteGroup::cyclic(4);
        let zero = GroupHom::zero(&c2, &c4);
        assert!(ChainComplex::new(0, vec![c2.clone(), c4, c2], vec![proj_c4_c2(), zero]).is_ok());
    }

    #[test]
    fn properness() {
        let s3 = library::symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let c2 = FiniteGroup::cyclic(2);
        let incl = GroupHom::from_fn(&c2, &s3, |x| if x == 0 { 0 } else { t }).unwrap();
        let c = ChainComplex::two_term(&incl, 0);
        let (deg, g, _) = c.properness_witness().unwrap();
        assert_eq!(deg, 1);
        assert_eq!(s3.element_order(g), 2);
        assert!(matches!(ProperChainComplex::new(c), Err(Error::NotProper { .. })));
        assert!(ChainComplex::zero().is_proper());
        assert!(ChainComplex::two_term(&proj_c4_c2(), 0).is_proper());
    }

    #[test]
    fn homology_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let c = ChainComplex::concentrated(&c2, 0);
        assert_eq!(c.homology(0).unwrap().order(), 2);
        let z = ChainComplex::two_term(&GroupHom::zero(&c2, &c2), 0);
        assert_eq!(z.homology(0).unwrap().order(), 2);
        assert_eq!(z.homology(1).unwrap().order(), 2);
        let iso = ChainComplex::two_term(&GroupHom::identity(&c2), 0);
        assert_eq!(iso.homology(0).unwrap().order(), 1);
        assert_eq!(iso.homology(1).unwrap().order(), 1);
        let p = ChainComplex::two_term(&proj_c4_c2(), 4);
        assert_eq!(p.homology(5).unwrap().order(), 2);
        assert_eq!(p.homology(4).unwrap().order(), 1);
        assert_eq!(p.homology(9).unwrap().order(), 1);
    }

    #[test]
    fn windows() {
        let c = ChainComplex::two_term(&proj_c4_c2(), -2);
        assert_eq!((c.lo(), c.hi()), (-2, -1));
        assert_eq!(c.order(-1), 4);
        assert_eq!(c.order(5), 1);
        assert!(c.diff(0).is_zero());
        let wide = c.on_window(-4, 3);
        assert_eq!(wide.trimmed().orders(), vec![2, 4]);
        assert_eq!(wide.support(), Some((-2, -1)));
    }
}
