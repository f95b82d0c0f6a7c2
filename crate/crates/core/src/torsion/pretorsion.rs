use serde::Serialize;

use crate::chain::{
    descend_through_epi, for_each_chain_hom, image_factorization, lift_through_mono, ChainComplex, ChainMap, ChainSES,
    Theory,
};
use crate::error::{Error, Result};
use crate::par::{self, ExecMode};

use super::Object;

/// The shape of a trivial object of the pretorsion theory built from an
/// ordered pair of truncation theories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum TrivialPattern {
    /// a single abelian group in degree `n`
    EilenbergMacLane { n: i32, order: usize },
    /// `δ_{n+1}: M_{n+1} ≅ M_n`, nothing else
    GroupLike { n: i32, order: usize },
    /// supported in `[lo, hi]`
    Window { lo: i32, hi: i32 },
    NotTrivial,
}

fn check_order(smaller: Theory, larger: Theory) -> Result<()> {
    if smaller > larger {
        return Err(Error::OrderViolation { smaller: smaller.to_string(), larger: larger.to_string() });
    }
    Ok(())
}

/// Membership in `Z = T_larger ∩ F_smaller`.
pub fn z_member(c: &ChainComplex, smaller: Theory, larger: Theory) -> bool {
    larger.is_torsion(c) && smaller.is_torsion_free(c)
}

pub fn classify_trivial_object(c: &ChainComplex, smaller: Theory, larger: Theory) -> Result<TrivialPattern> {
    check_order(smaller, larger)?;
    if !z_member(c, smaller, larger) {
        return Ok(TrivialPattern::NotTrivial);
    }
    Ok(match (smaller, larger) {
        (Theory::MuNgeq(n), Theory::MuGeq(m)) if n == m => {
            let g = c.group(n);
            if n >= 1 || g.is_abelian() {
                TrivialPattern::EilenbergMacLane { n, order: g.order() }
            } else {
                TrivialPattern::Window { lo: n, hi: n }
            }
        }
        (Theory::MuGeq(k), Theory::MuNgeq(n)) if k == n + 1 => TrivialPattern::GroupLike { n, order: c.order(n) },
        _ => TrivialPattern::Window { lo: larger.degree(), hi: smaller.degree() },
    })
}

/// The canonical factorization through which a map was found trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZRoute {
    Image,
    Source,
    Target,
    /// through `g_A: A → G(A)` of the smaller theory
    FreeQuotient,
    /// through `t_B: T(B) → B` of the larger theory
    TorsionPart,
}

#[derive(Clone, Debug)]
pub struct ZFactorization {
    pub route: ZRoute,
    pub middle: ChainComplex,
}

/// A factorization of `f: A → B` through an object of `Z`, tried in turn
/// through the image of `f`, through `A`, through `B`, through `G(A)` and
/// through `T(B)`. `None` when none of these routes works.
pub fn z_trivial(f: &ChainMap, smaller: Theory, larger: Theory) -> Result<Option<ZFactorization>> {
    let z = |c: &ChainComplex| z_member(c, smaller, larger);
    let found = |route, middle: &ChainComplex| Ok(Some(ZFactorization { route, middle: middle.clone() }));
    let (image, _, _) = image_factorization(f)?;
    if z(&image) {
        return found(ZRoute::Image, &image);
    }
    if z(f.source()) {
        return found(ZRoute::Source, f.source());
    }
    if z(f.target()) {
        return found(ZRoute::Target, f.target());
    }
    let g = smaller.decompose(f.source())?;
    if z(&g.quotient) && descend_through_epi(f, &g.pi)?.is_ok() {
        return found(ZRoute::FreeQuotient, &g.quotient);
    }
    let t = larger.decompose(f.target())?;
    if z(&t.sub) && lift_through_mono(f, &t.iota)?.is_ok() {
        return found(ZRoute::TorsionPart, &t.sub);
    }
    Ok(None)
}

/// `T(X) →t X →g G(X)` with `T` from the larger theory and `G` from the
/// smaller one, and the image factorization of `g ∘ t` through the
/// trivial object `T(X)/S(X)`.
#[derive(Clone, Debug)]
pub struct PretorsionDecomposition {
    pub smaller: Theory,
    pub larger: Theory,
    pub object: ChainComplex,
    pub torsion: ChainSES,
    pub free: ChainSES,
    pub middle: ChainComplex,
    pub e: ChainMap,
    pub m: ChainMap,
    pub torsion_ok: bool,
    pub free_ok: bool,
    pub middle_in_z: bool,
    pub pattern: TrivialPattern,
}

impl PretorsionDecomposition {
    pub fn t(&self) -> &ChainMap {
        &self.torsion.iota
    }

    pub fn g(&self) -> &ChainMap {
        &self.free.pi
    }

    pub fn holds(&self) -> bool {
        self.torsion_ok && self.free_ok && self.middle_in_z && self.pattern != TrivialPattern::NotTrivial
    }
}

pub fn pretorsion_decompose(x: &ChainComplex, smaller: Theory, larger: Theory) -> Result<PretorsionDecomposition> {
    check_order(smaller, larger)?;
    let torsion = larger.decompose(x)?;
    let free = smaller.decompose(x)?;
    let gt = torsion.iota.then(&free.pi);
    let (middle, e, m) = image_factorization(&gt)?;
    Ok(PretorsionDecomposition {
        smaller,
        larger,
        object: x.clone(),
        torsion_ok: larger.is_torsion(&torsion.sub),
        free_ok: smaller.is_torsion_free(&free.quotient),
        middle_in_z: z_member(&middle, smaller, larger),
        pattern: classify_trivial_object(&middle, smaller, larger)?,
        torsion,
        free,
        middle,
        e,
        m,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PreexactReport {
    pub probes: usize,
    /// homs `P → X` with `g ∘ a` trivial, and how many lift through `t`
    pub into: usize,
    pub lifted: usize,
    /// homs `X → P` with `b ∘ t` trivial, and how many descend along `g`
    pub out_of: usize,
    pub descended: usize,
    /// the lift is unique because `t` is injective, the descent because `g`
    /// is surjective
    pub unique: bool,
    pub failures: Vec<String>,
}

impl PreexactReport {
    pub fn passed(&self) -> bool {
        self.unique && self.failures.is_empty() && self.lifted == self.into && self.descended == self.out_of
    }
}

/// The prekernel property of `t` and the precokernel property of `g`
/// against every hom from and to every probe.
pub fn verify_preexact(dec: &PretorsionDecomposition, probes: &[Object], mode: ExecMode) -> Result<PreexactReport> {
    let (s, l) = (dec.smaller, dec.larger);
    let (t, g) = (dec.t(), dec.g());
    let x = &dec.object;
    let rows = par::map(mode, probes, |p| -> Result<PreexactReport> {
        let mut r = PreexactReport::default();
        let mut err = None;
        for_each_chain_hom(&p.chain, x, false, |a| {
            match z_trivial(&a.then(g), s, l) {
                Ok(None) => {}
                Ok(Some(_)) => {
                    r.into += 1;
                    match lift_through_mono(a, t) {
                        Ok(Ok(_)) => r.lifted += 1,
                        Ok(Err((n, e))) => r.failures.push(format!("{} → X leaves T(X) at degree {n}, element {e}", p.name)),
                        Err(e) => err = Some(e),
                    }
                }
                Err(e) => err = Some(e),
            }
            err.is_none()
        })?;
        for_each_chain_hom(x, &p.chain, false, |b| {
            match z_trivial(&t.then(b), s, l) {
                Ok(None) => {}
                Ok(Some(_)) => {
                    r.out_of += 1;
                    match descend_through_epi(b, g) {
                        Ok(Ok(_)) => r.descended += 1,
                        Ok(Err((n, e))) => {
                            r.failures.push(format!("X → {} does not descend to G(X) at degree {n}, element {e}", p.name))
                        }
                        Err(e) => err = Some(e),
                    }
                }
                Err(e) => err = Some(e),
            }
            err.is_none()
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(r),
        }
    });
    let mut total = PreexactReport { probes: probes.len(), unique: t.is_injective() && g.is_surjective(), ..Default::default() };
    for r in rows {
        let r = r?;
        total.into += r.into;
        total.lifted += r.lifted;
        total.out_of += r.out_of;
        total.descended += r.descended;
        total.failures.extend(r.failures);
    }
    Ok(total)
}

fn same_map(a: &ChainMap, b: &ChainMap) -> bool {
    let (lo, hi) = a.window();
    let (lo2, hi2) = b.window();
    (lo.min(lo2)..=hi.max(hi2)).all(|n| a.component(n).same_map(&b.component(n)))
}

/// For `α: X → Y` with `X` torsion for the larger theory and `Y`
/// torsion-free for the smaller: the three factorizations (through the
/// image `I`, through `g_X`, through `t_Y`) and the comparison maps
/// `β: G(X) → I`, `γ: I → T(Y)`.
#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub image_in_z: bool,
    pub gx_in_z: bool,
    pub ty_in_z: bool,
    pub beta: bool,
    pub gamma: bool,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.image_in_z && self.gx_in_z && self.ty_in_z && self.beta && self.gamma
    }
}

pub fn remark_factorizations(alpha: &ChainMap, smaller: Theory, larger: Theory) -> Result<RemarkReport> {
    check_order(smaller, larger)?;
    let (x, y) = (alpha.source(), alpha.target());
    if !larger.is_torsion(x) || !smaller.is_torsion_free(y) {
        return Err(Error::Malformed(format!("α must run from a {larger}-torsion to a {smaller}-torsion-free object")));
    }
    let (image, e, m) = image_factorization(alpha)?;
    let gx = smaller.decompose(x)?;
    let ty = larger.decompose(y)?;
    let (g, t) = (&gx.pi, &ty.iota);
    let beta = match (descend_through_epi(&e, g)?, descend_through_epi(alpha, g)?) {
        (Ok(b), Ok(a1)) => same_map(&b.then(&m), &a1),
        _ => false,
    };
    let gamma = match (lift_through_mono(&m, t)?, lift_through_mono(alpha, t)?) {
        (Ok(c), Ok(a2)) => same_map(&e.then(&c), &a2),
        _ => false,
    };
    Ok(RemarkReport {
        image_in_z: z_member(&image, smaller, larger),
        gx_in_z: z_member(&gx.quotient, smaller, larger),
        ty_in_z: z_member(&ty.sub, smaller, larger),
        beta,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupHom};

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn probes() -> Vec<Object> {
        vec![
            Object::new("dis", ChainComplex::concentrated(&c2(), 0)),
            Object::new("k1", ChainComplex::concentrated(&c2(), 1)),
            Object::new("ind", ChainComplex::two_term(&GroupHom::identity(&c2()), 0)),
        ]
    }

    #[test]
    fn ind_group_like() {
        let ind = ChainComplex::two_term(&GroupHom::identity(&c2()), 0);
        let dec = pretorsion_decompose(&ind, Theory::MuGeq(1), Theory::MuNgeq(0)).unwrap();
        assert!(dec.t().is_iso() && dec.holds());
        assert_eq!(dec.pattern, TrivialPattern::GroupLike { n: 0, order: 2 });
        let r = verify_preexact(&dec, &probes(), ExecMode::Sequential).unwrap();
        assert!(r.passed() && r.into > 0 && r.out_of > 0, "{r:?}");
    }

    #[test]
    fn dis_and_k1() {
        let dis = ChainComplex::concentrated(&c2(), 0);
        let dec = pretorsion_decompose(&dis, Theory::MuGeq(1), Theory::MuNgeq(0)).unwrap();
        assert!(dec.t().is_zero() && dec.g().is_iso());
        let k1 = ChainComplex::concentrated(&c2(), 1);
        let dec = pretorsion_decompose(&k1, Theory::MuNgeq(1), Theory::MuGeq(1)).unwrap();
        assert!(dec.torsion.quotient.is_zero() && dec.middle.orders() == vec![2]);
        assert_eq!(dec.pattern, TrivialPattern::EilenbergMacLane { n: 1, order: 2 });
        assert!(matches!(pretorsion_decompose(&k1, Theory::MuGeq(1), Theory::MuNgeq(1)), Err(Error::OrderViolation { .. })));
    }

    #[test]
    fn z_trivial_examples() {
        let dis = ChainComplex::concentrated(&c2(), 0);
        let ind = ChainComplex::two_term(&GroupHom::identity(&c2()), 0);
        let (s, l) = (Theory::MuGeq(1), Theory::MuNgeq(0));
        let zero = z_trivial(&ChainMap::zero(&ind, &dis), s, l).unwrap().unwrap();
        assert!(zero.route == ZRoute::Image && zero.middle.is_zero());
        let bad = ChainMap::from_fn(&ind, &dis, |n| {
            if n == 0 {
                GroupHom::identity(&c2())
            } else {
                GroupHom::zero(&c2(), &FiniteGroup::trivial())
            }
        });
        assert!(matches!(bad, Err(Error::NotAChainMap { degree: 1, .. })));
        let f = ChainMap::from_fn(&dis, &ind, |n| {
            if n == 0 {
                GroupHom::identity(&c2())
            } else {
                GroupHom::zero(&FiniteGroup::trivial(), &c2())
            }
        })
        .unwrap();
        let w = z_trivial(&f, s, l).unwrap().unwrap();
        assert_eq!(w.route, ZRoute::Target);
        assert_eq!(z_trivial(&f, Theory::MuNgeq(0), Theory::MuGeq(0)).unwrap().unwrap().route, ZRoute::Image);
        assert!(z_trivial(&ChainMap::identity(&dis), s, l).unwrap().is_none());
    }

    #[test]
    fn remark_squares() {
        let ind = ChainComplex::two_term(&GroupHom::identity(&c2()), 0);
        let r = remark_factorizations(&ChainMap::identity(&ind), Theory::MuGeq(1), Theory::MuNgeq(0)).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
