use super::complex::action_preservation_witness;
use super::{CrossedComplex, CrossedModule, XmodHom};
use crate::chain::{tr, tr_prime, ChainComplex, ChainMap, ChainSES};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupHom};

/// A short exact sequence of crossed complexes: exact as chain complexes,
/// both legs preserving the actions.
#[derive(Clone, Debug)]
pub struct CrossedSES {
    pub sub: CrossedComplex,
    pub middle: CrossedComplex,
    pub quotient: CrossedComplex,
    pub chain: ChainSES,
}

impl CrossedSES {
    fn new(sub: CrossedComplex, middle: CrossedComplex, quotient: CrossedComplex, iota: ChainMap, pi: ChainMap) -> Result<CrossedSES> {
        let chain = ChainSES::new(iota, pi)?;
        for (name, f, s, t) in [("ι", &chain.iota, &sub, &middle), ("π", &chain.pi, &middle, &quotient)] {
            if let Some(w) = action_preservation_witness(f, s, t) {
                return Err(Error::InvalidCrossed(format!("{name} does not preserve the action at {w:?}")));
            }
        }
        Ok(CrossedSES { sub, middle, quotient, chain })
    }
}

#[derive(Clone, Debug)]
pub enum ETorsion {
    Sequence(Box<CrossedSES>),
    /// `ᵇm ≠ m` for `b = actor`, `m = element` in `degree`
    NotInE { degree: usize, actor: Elem, element: Elem },
}

impl ETorsion {
    pub fn in_e(&self) -> bool {
        matches!(self, ETorsion::Sequence(_))
    }

    pub fn sequence(&self) -> Option<&CrossedSES> {
        match self {
            ETorsion::Sequence(s) => Some(s),
            ETorsion::NotInE { .. } => None,
        }
    }
}

/// The `Dis` counit of a crossed module and its `(Dis, Ab)` sequence.
#[derive(Clone, Debug)]
pub struct CtfSequences {
    /// `(0 → A, id_B)` from `0 → B`
    pub counit: XmodHom,
    pub counit_monic: bool,
    pub e_torsion: ETorsion,
    /// whether `(id_A, 0)` onto `A → 0` is a morphism, found by direct check
    pub quotient_leg_is_morphism: bool,
}

fn degreewise(src: &ChainComplex, tgt: &ChainComplex, keep: impl Fn(i32) -> bool) -> Result<ChainMap> {
    ChainMap::from_fn(src, tgt, |n| {
        if keep(n) && src.group(n) == tgt.group(n) {
            GroupHom::identity(&src.group(n))
        } else {
            GroupHom::zero(&src.group(n), &tgt.group(n))
        }
    })
}

fn xmod_leg(src: &CrossedModule, tgt: &CrossedModule, keep: impl Fn(i32) -> bool) -> Result<(CrossedComplex, CrossedComplex, ChainMap)> {
    let s = CrossedComplex::from_crossed_module(src)?;
    let t = CrossedComplex::from_crossed_module(tgt)?;
    let f = degreewise(s.chain(), t.chain(), keep)?;
    Ok((s, t, f))
}

/// `(0 → B) → (A → B) → (A → 0)` when `B` acts trivially, else the
/// offending pair.
pub fn xmod_ctf_sequences(xm: &CrossedModule) -> Result<CtfSequences> {
    super::validate_crossed_module(xm).into_result()?;
    let t = FiniteGroup::trivial();
    let counit = XmodHom { f_a: GroupHom::zero(&t, &xm.a), f_b: GroupHom::identity(&xm.b) };
    let counit_monic = counit.f_a.is_injective() && counit.f_b.is_injective();
    let dis = CrossedModule::discrete(&xm.b);
    let quotient_leg_is_morphism = xm.a.elements().all(|a| xm.b.generators().iter().all(|&b| xm.act(b, a) == a));
    let e_torsion = match xm.nontrivial_action_witness() {
        Some((b, a)) => ETorsion::NotInE { degree: 1, actor: b, element: a },
        None => {
            let ab = CrossedModule::abelian(&xm.a)?;
            let (sub, middle, iota) = xmod_leg(&dis, xm, |n| n == 0)?;
            let (_, quotient, pi) = xmod_leg(xm, &ab, |n| n == 1)?;
            ETorsion::Sequence(Box::new(CrossedSES::new(sub, middle, quotient, iota, pi)?))
        }
    };
    Ok(CtfSequences { counit, counit_monic, e_torsion, quotient_leg_is_morphism })
}

/// `(A → 0) → (A → G) → (0 → G)` for a module `δ = 0`.
pub fn mod_e_torsion(xm: &CrossedModule) -> Result<CrossedSES> {
    if let Some(a) = xm.delta.iter().position(|&x| x != 0) {
        return Err(Error::NotAModule { element: a });
    }
    super::validate_crossed_module(xm).into_result()?;
    let ab = CrossedModule::abelian(&xm.a)?;
    let dis = CrossedModule::discrete(&xm.b);
    let (sub, middle, iota) = xmod_leg(&ab, xm, |n| n == 1)?;
    let (_, quotient, pi) = xmod_leg(xm, &dis, |n| n == 0)?;
    CrossedSES::new(sub, middle, quotient, iota, pi)
}

#[derive(Clone, Debug)]
pub struct CrsETorsion {
    pub n: usize,
    /// `sk_{n-1} tr_{n-1} M → M`
    pub counit: ChainMap,
    pub counit_monic: bool,
    pub sequence: ETorsion,
    /// whether `M → tr'_n M` preserves the actions, found by direct check
    pub projection_is_morphism: bool,
    pub delta1_surjective: bool,
    pub delta1_central_extension: bool,
}

impl CrsETorsion {
    /// A central extension `δ_1` places the complex in `E`.
    pub fn implication_holds(&self) -> bool {
        !self.delta1_central_extension || self.sequence.in_e()
    }
}

/// `tr_{n-1} M → M → tr'_n M` for `n ≥ 2` when `M_0` acts trivially on
/// every `M_i` with `i ≥ n`.
pub fn crs_e_torsion(c: &CrossedComplex, n: usize) -> Result<CrsETorsion> {
    if n < 2 {
        return Err(Error::Malformed(format!("E-torsion degree must be at least 2, got {n}")));
    }
    super::validate_crossed_complex(c).into_result()?;
    let m = c.chain().chain();
    let k = n as i32;
    let sub = c.truncated(n - 1);
    let counit = degreewise(&tr(m, k - 1).on_window(0, sub.top() as i32), m, |i| i < k)?;
    let counit_monic = counit.is_injective();
    let quo_chain = tr_prime(m, k).on_window(0, m.hi().max(k));
    let quotient = CrossedComplex::with_trivial_actions(&quo_chain)?;
    let pi = degreewise(m, quotient.chain(), |i| i >= k)?;
    let projection_is_morphism = action_preservation_witness(&pi, c, &quotient).is_none();
    let sequence = match c.nontrivial_action_from(n) {
        Some((degree, actor, element)) => ETorsion::NotInE { degree, actor, element },
        None => {
            let iota = degreewise(sub.chain(), m, |i| i < k)?;
            ETorsion::Sequence(Box::new(CrossedSES::new(sub, c.clone(), quotient, iota, pi)?))
        }
    };
    let d1 = c.chain().diff(1);
    Ok(CrsETorsion {
        n,
        counit,
        counit_monic,
        sequence,
        projection_is_morphism,
        delta1_surjective: d1.is_surjective(),
        delta1_central_extension: crate::group::is_central_extension(&d1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::symmetric;
    use crate::group::{GroupAction, Subgroup};

    #[test]
    fn xmod_sequences() {
        let s3 = symmetric(3);
        let dis = xmod_ctf_sequences(&CrossedModule::discrete(&s3)).unwrap();
        assert!(dis.counit_monic && dis.counit.f_b.is_iso() && dis.e_torsion.in_e());
        let c2 = FiniteGroup::cyclic(2);
        let zero = CrossedModule::new(&GroupHom::zero(&c2, &c2), &GroupAction::trivial(&c2, &c2)).unwrap();
        let seq = xmod_ctf_sequences(&zero).unwrap();
        let s = seq.e_torsion.sequence().unwrap();
        assert_eq!(s.sub.chain().orders(), vec![2, 1]);
        assert_eq!(s.quotient.chain().orders(), vec![1, 2]);
        let (_, incl) = Subgroup::from_elements(&s3, &[0, 3, 4]).unwrap().to_group();
        let norm = CrossedModule::normal_inclusion(&incl).unwrap();
        let seq = xmod_ctf_sequences(&norm).unwrap();
        assert!(matches!(seq.e_torsion, ETorsion::NotInE { degree: 1, .. }));
        assert!(!seq.quotient_leg_is_morphism);
    }

    #[test]
    fn modules() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let inv = GroupAction::from_fn(&c2, &c3, |b, a| if b == 0 { a } else { (3 - a) % 3 }).unwrap();
        let xm = CrossedModule::module(&inv).unwrap();
        let s = mod_e_torsion(&xm).unwrap();
        assert_eq!(s.sub.chain().orders(), vec![1, 3]);
        assert_eq!(s.quotient.chain().orders(), vec![2, 1]);
        assert!(matches!(mod_e_torsion(&CrossedModule::conjugation(&c2)), Err(Error::NotAModule { element: 1 })));
    }

    #[test]
    fn crossed_complexes() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let t = FiniteGroup::trivial();
        let chain = ChainComplex::new(0, vec![c2.clone(), t.clone(), c3.clone()], vec![GroupHom::zero(&t, &c2), GroupHom::zero(&c3, &t)]).unwrap();
        let inv = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let c = CrossedComplex::new(&chain, vec![vec![vec![0], vec![0]], inv]).unwrap();
        let r = crs_e_torsion(&c, 2).unwrap();
        assert!(r.counit_monic && !r.sequence.in_e() && !r.projection_is_morphism);
        let triv = CrossedComplex::with_trivial_actions(&chain).unwrap();
        let r = crs_e_torsion(&triv, 2).unwrap();
        assert!(r.sequence.in_e() && r.projection_is_morphism);

        let c4 = FiniteGroup::cyclic(4);
        let p = GroupHom::from_fn(&c4, &c2, |x| x % 2).unwrap();
        let chain = ChainComplex::new(0, vec![c2.clone(), c4.clone(), c2.clone()], vec![p, GroupHom::from_fn(&c2, &c4, |x| 2 * x).unwrap()]).unwrap();
        let xm = CrossedModule::central_extension(&chain.diff(1)).unwrap();
        let c = CrossedComplex::new(&chain, vec![xm.action.clone(), vec![vec![0, 1], vec![0, 1]]]).unwrap();
        let r = crs_e_torsion(&c, 2).unwrap();
        assert!(r.delta1_central_extension && r.sequence.in_e() && r.implication_holds());
    }
}
