//! The chain-level truncation torsion theories and their canonical
//! short exact sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::truncation::{image_factor, tr, tr_prime};
use super::{ChainComplex, ChainMap, ChainSES};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, GroupHom};

/// A member of the lattice `… < μ_{n+1≥} < μ_{≥n+1} < μ_{n≥} < μ_{≥n} < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    /// torsion: trivial below `n` and `δ_{n+1}` onto; torsion-free: trivial above `n`
    MuNgeq(i32),
    /// torsion: trivial below `n`; torsion-free: trivial above `n` and `δ_n` injective
    MuGeq(i32),
}

impl Theory {
    /// Position in the lattice; smaller rank means smaller torsion class.
    pub fn rank(self) -> i64 {
        match self {
            Theory::MuNgeq(n) => -2 * n as i64,
            Theory::MuGeq(n) => -2 * n as i64 + 1,
        }
    }

    pub fn from_rank(r: i64) -> Theory {
        if r.rem_euclid(2) == 0 {
            Theory::MuNgeq((-r / 2) as i32)
        } else {
            Theory::MuGeq(((1 - r) / 2) as i32)
        }
    }

    pub fn degree(self) -> i32 {
        match self {
            Theory::MuNgeq(n) | Theory::MuGeq(n) => n,
        }
    }

    /// The next larger theory.
    pub fn succ(self) -> Theory {
        Theory::from_rank(self.rank() + 1)
    }

    /// The next smaller theory.
    pub fn pred(self) -> Theory {
        Theory::from_rank(self.rank() - 1)
    }

    /// Parses `mu-ngeq:N` or `mu-geq:N` (underscores also accepted).
    pub fn parse(s: &str) -> Result<Theory> {
        let s = s.replace('_', "-");
        let (kind, n) = s.split_once(':').ok_or_else(|| Error::Malformed(format!("bad theory `{s}`")))?;
        let n: i32 = n.trim().parse().map_err(|_| Error::Malformed(format!("bad theory degree `{n}`")))?;
        match kind.trim() {
            "mu-ngeq" => Ok(Theory::MuNgeq(n)),
            "mu-geq" => Ok(Theory::MuGeq(n)),
            other => Err(Error::Malformed(format!("unknown theory `{other}`"))),
        }
    }

    pub fn is_torsion(self, c: &ChainComplex) -> bool {
        match self {
            Theory::MuNgeq(n) => trivial_below(c, n) && c.diff(n + 1).is_surjective(),
            Theory::MuGeq(n) => trivial_below(c, n),
        }
    }

    pub fn is_torsion_free(self, c: &ChainComplex) -> bool {
        match self {
            Theory::MuNgeq(n) => trivial_above(c, n),
            Theory::MuGeq(n) => trivial_above(c, n) && c.diff(n).is_injective(),
        }
    }

    pub fn decompose(self, c: &ChainComplex) -> Result<ChainSES> {
        match self {
            Theory::MuNgeq(n) => mu_ngeq(c, n),
            Theory::MuGeq(n) => mu_geq(c, n),
        }
    }
}

impl PartialOrd for Theory {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Theory {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::MuNgeq(n) => write!(f, "mu-ngeq:{n}"),
            Theory::MuGeq(n) => write!(f, "mu-geq:{n}"),
        }
    }
}

fn trivial_below(c: &ChainComplex, n: i32) -> bool {
    (c.lo()..n.min(c.hi() + 1)).all(|i| c.order(i) == 1)
}

fn trivial_above(c: &ChainComplex, n: i32) -> bool {
    ((n + 1).max(c.lo())..=c.hi()).all(|i| c.order(i) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainClass {
    Torsion,
    TorsionFree,
    Neither,
    /// the zero complex, in both classes
    Zero,
}

pub fn classify_chain(c: &ChainComplex, theory: Theory) -> ChainClass {
    match (theory.is_torsion(c), theory.is_torsion_free(c)) {
        (true, true) => ChainClass::Zero,
        (true, false) => ChainClass::Torsion,
        (false, true) => ChainClass::TorsionFree,
        (false, false) => ChainClass::Neither,
    }
}

/// `f(n)` on the union window, zero where it gives `None`.
fn chain_map(source: &ChainComplex, target: &ChainComplex, f: impl Fn(i32) -> Option<GroupHom>) -> Result<ChainMap> {
    ChainMap::from_fn(source, target, |n| f(n).unwrap_or_else(|| GroupHom::zero(&source.group(n), &target.group(n))))
}

/// The sequence `T → X → F` for `μ_{n≥}`: `T` ends with
/// `M_{n+1} ↠ δ_{n+1}(M_{n+1})` in degree `n`, `F` has `Cok δ_{n+1}` in
/// degree `n`.
pub fn mu_ngeq(c: &ChainComplex, n: i32) -> Result<ChainSES> {
    let f = image_factor(c, n + 1);
    if let Err(Error::NotNormal { conjugator, element }) = f.image.check_normal() {
        return Err(Error::NotProper { degree: n + 1, conjugator, element });
    }
    let mut groups = vec![f.image_group.clone()];
    let mut diffs = Vec::new();
    for i in n + 1..=c.hi() {
        groups.push(c.group(i));
        diffs.push(if i == n + 1 { f.epi.clone() } else { c.diff(i) });
    }
    let t = ChainComplex::new_unchecked(n, groups, diffs);

    let q = quotient(&c.group(n), &f.image)?;
    let lo = c.lo().min(n);
    let mut groups: Vec<FiniteGroup> = (lo..n).map(|i| c.group(i)).collect();
    let mut diffs: Vec<GroupHom> = (lo + 1..n).map(|i| c.diff(i)).collect();
    if n > lo {
        let d = c.diff(n);
        diffs.push(GroupHom::from_fn_unchecked(&q.group, &c.group(n - 1), |i| d.apply(q.reps[i])));
    }
    groups.push(q.group.clone());
    let fr = ChainComplex::new_unchecked(lo, groups, diffs);

    let iota = chain_map(&t, c, |i| match i.cmp(&n) {
        std::cmp::Ordering::Greater => Some(GroupHom::identity(&c.group(i))),
        std::cmp::Ordering::Equal => Some(f.mono.clone()),
        std::cmp::Ordering::Less => None,
    })?;
    let pi = chain_map(c, &fr, |i| match i.cmp(&n) {
        std::cmp::Ordering::Less => Some(GroupHom::identity(&c.group(i))),
        std::cmp::Ordering::Equal => Some(q.projection.clone()),
        std::cmp::Ordering::Greater => None,
    })?;
    ChainSES::new(iota, pi)
}

/// The sequence `T → X → F` for `μ_{≥n}`: `T` is `(…M_{n+1}, Ker δ_n)`,
/// `F` is `(δ_n(M_n) ↪ M_{n-1} → …)` with the image in degree `n`.
pub fn mu_geq(c: &ChainComplex, n: i32) -> Result<ChainSES> {
    let ker = c.kernel(n);
    let (kg, kincl) = ker.to_group();
    let mut groups = vec![kg.clone()];
    let mut diffs = Vec::new();
    for i in n + 1..=c.hi() {
        groups.push(c.group(i));
        diffs.push(if i == n + 1 { c.diff(i).corestrict(&ker, &kg) } else { c.diff(i) });
    }
    let t = ChainComplex::new_unchecked(n, groups, diffs);

    let f = image_factor(c, n);
    let lo = c.lo().min(n);
    let mut groups: Vec<FiniteGroup> = (lo..n).map(|i| c.group(i)).collect();
    let mut diffs: Vec<GroupHom> = (lo + 1..n).map(|i| c.diff(i)).collect();
    if n > lo {
        diffs.push(f.mono.clone());
    }
    groups.push(f.image_group.clone());
    let fr = ChainComplex::new_unchecked(lo, groups, diffs);

    let iota = chain_map(&t, c, |i| match i.cmp(&n) {
        std::cmp::Ordering::Greater => Some(GroupHom::identity(&c.group(i))),
        std::cmp::Ordering::Equal => Some(kincl.clone()),
        std::cmp::Ordering::Less => None,
    })?;
    let pi = chain_map(c, &fr, |i| match i.cmp(&n) {
        std::cmp::Ordering::Less => Some(GroupHom::identity(&c.group(i))),
        std::cmp::Ordering::Equal => Some(f.epi.clone()),
        std::cmp::Ordering::Greater => None,
    })?;
    ChainSES::new(iota, pi)
}

pub fn torsion_decompose(c: &ChainComplex, theory: Theory) -> Result<ChainSES> {
    theory.decompose(c)
}

/// The two sequences of the triple `(ch_{n-1≥}, ch_{≥n}, F_{tr_{n-1}})`.
#[derive(Clone, Debug)]
pub struct TtfReport {
    pub n: i32,
    /// `tr_{n-1}X → X → tr'_n X`
    pub first: ChainSES,
    /// the `μ_{≥n}` sequence
    pub second: ChainSES,
    /// degreewise sections `s_i` of the first quotient map, `π_i s_i = id`
    pub section: Vec<GroupHom>,
    /// whether the degreewise section is also a chain map
    pub chain_split: bool,
    /// the first quotient and the second torsion part both lie in `ch_{≥n}`
    pub middle_agrees: bool,
    /// the outer pieces lie in `ch_{n-1≥}` and `F_{tr_{n-1}}`
    pub outer_agrees: bool,
}

pub fn ttf_decompose(c: &ChainComplex, n: i32) -> Result<TtfReport> {
    let sub = tr(c, n - 1);
    let quo = tr_prime(c, n);
    let iota = chain_map(&sub, c, |i| (i < n).then(|| GroupHom::identity(&c.group(i))))?;
    let pi = chain_map(c, &quo, |i| (i >= n).then(|| GroupHom::identity(&c.group(i))))?;
    let first = ChainSES::new(iota, pi)?;
    let second = mu_geq(c, n)?;

    let (lo, hi) = first.pi.window();
    let section: Vec<GroupHom> = (lo..=hi)
        .map(|i| {
            if i >= n {
                GroupHom::identity(&c.group(i))
            } else {
                GroupHom::zero(&quo.group(i), &c.group(i))
            }
        })
        .collect();
    for (k, s) in section.iter().enumerate() {
        let i = lo + k as i32;
        let p = first.pi.component(i);
        if let Some(x) = quo.group(i).elements().find(|&x| p.apply(s.apply(x)) != x) {
            return Err(Error::NotExact { degree: i, reason: format!("section fails at element {x}") });
        }
    }
    let chain_split = ChainMap::new(&quo, c, section.clone()).is_ok();
    let geq = Theory::MuGeq(n);
    let middle_agrees = geq.is_torsion(&quo) && geq.is_torsion(&second.sub);
    let outer_agrees = Theory::MuNgeq(n - 1).is_torsion_free(&sub) && geq.is_torsion_free(&second.quotient);
    Ok(TtfReport { n, first, second, section, chain_split, middle_agrees, outer_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn lattice_order() {
        let t = [Theory::MuNgeq(1), Theory::MuGeq(1), Theory::MuNgeq(0), Theory::MuGeq(0)];
        assert!(t.windows(2).all(|w| w[0] < w[1] && w[0].succ() == w[1] && w[1].pred() == w[0]));
        for r in -7..7 {
            assert_eq!(Theory::from_rank(r).rank(), r);
        }
        assert_eq!(Theory::parse("mu-geq:3").unwrap(), Theory::MuGeq(3));
        assert_eq!(Theory::parse(&Theory::MuNgeq(2).to_string()).unwrap(), Theory::MuNgeq(2));
    }

    #[test]
    fn mu_geq_on_degree_zero() {
        let x = ChainComplex::concentrated(&c(3), 0);
        let s = mu_geq(&x, 1).unwrap();
        assert!(s.sub.is_zero());
        assert_eq!(s.quotient.trimmed().orders(), vec![3]);
    }

    #[test]
    fn mu_ngeq_on_surjection() {
        let p = GroupHom::from_fn(&c(4), &c(2), |x| x % 2).unwrap();
        let x = ChainComplex::two_term(&p, 0);
        let s = mu_ngeq(&x, 0).unwrap();
        assert_eq!((s.sub.lo(), s.sub.orders()), (0, vec![2, 4]));
        assert!(s.quotient.is_zero());
        assert_eq!(classify_chain(&s.sub, Theory::MuNgeq(0)), ChainClass::Torsion);
    }

    #[test]
    fn mu_geq_on_zero_map() {
        let x = ChainComplex::two_term(&GroupHom::zero(&c(2), &c(2)), 0);
        let s = mu_geq(&x, 1).unwrap();
        assert_eq!((s.sub.trimmed().lo(), s.sub.trimmed().orders()), (1, vec![2]));
        assert_eq!((s.quotient.trimmed().lo(), s.quotient.trimmed().orders()), (0, vec![2]));
    }

    #[test]
    fn classes() {
        let dis = ChainComplex::concentrated(&c(2), 0);
        assert_eq!(classify_chain(&dis, Theory::MuNgeq(0)), ChainClass::TorsionFree);
        for n in 0..3 {
            let iso = ChainComplex::two_term(&GroupHom::identity(&c(2)), n);
            assert_eq!(classify_chain(&iso, Theory::MuNgeq(n)), ChainClass::Torsion);
            assert_eq!(classify_chain(&iso, Theory::MuGeq(n + 1)), ChainClass::TorsionFree);
        }
        let k = ChainComplex::concentrated(&c(3), 2);
        assert_eq!(classify_chain(&k, Theory::MuGeq(2)), ChainClass::Torsion);
        assert_eq!(classify_chain(&ChainComplex::zero(), Theory::MuGeq(2)), ChainClass::Zero);
    }

    #[test]
    fn non_proper_rejected() {
        let s3 = crate::group::library::symmetric(3);
        let incl = GroupHom::new(&c(2), &s3, vec![0, 1]).unwrap();
        let x = ChainComplex::two_term(&incl, 0);
        assert!(matches!(mu_ngeq(&x, 0), Err(Error::NotProper { degree: 1, .. })));
        assert!(mu_geq(&x, 0).is_ok());
    }

    #[test]
    fn ttf_on_surjection() {
        let p = GroupHom::from_fn(&c(4), &c(2), |x| x % 2).unwrap();
        let x = ChainComplex::two_term(&p, 0);
        let r = ttf_decompose(&x, 1).unwrap();
        assert_eq!(r.first.sub.trimmed().orders(), vec![2]);
        assert_eq!(r.first.quotient.trimmed().orders(), vec![4]);
        assert_eq!(r.second.sub.trimmed().orders(), vec![2]);
        assert!(!r.chain_split);
        assert!(r.middle_agrees && r.outer_agrees);
        let z = ChainComplex::two_term(&GroupHom::zero(&c(4), &c(2)), 0);
        assert!(ttf_decompose(&z, 1).unwrap().chain_split);
    }
}
