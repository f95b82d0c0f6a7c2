//! The bundled desk-scale corpus: Moore complexes of standard simplicial
//! groups, seeded random proper complexes, crossed modules and crossed
//! complexes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::ChainComplex;
use crate::crossed::{CrossedComplex, CrossedModule};
use crate::error::Result;
use crate::group::library::{alternating, by_name, quaternion, symmetric};
use crate::group::{center, enumerate_homs, quotient, FiniteGroup, GroupAction, GroupHom, Subgroup};
use crate::simplicial::{dis, dold_kan_gamma, ind, moore, nerve_of_crossed_module, TruncatedSimplicialGroup};
use crate::torsion::Object;

pub const RANDOM_SEED: u64 = 0x6d6f_6f72;

fn small_groups() -> Vec<FiniteGroup> {
    ["C1", "C2", "C3", "C4", "V4", "S3"].iter().map(|n| by_name(n).expect("library name")).collect()
}

/// A proper complex on `lo..lo+width`: each `δ_n` is drawn among the homs
/// whose image is normal and lies in `ker δ_{n-1}`, preferring nonzero ones.
pub fn random_proper_complex(rng: &mut impl Rng, lo: i32, width: usize) -> Result<ChainComplex> {
    let lib = small_groups();
    let mut groups = vec![lib.choose(rng).expect("nonempty").clone()];
    let mut diffs: Vec<GroupHom> = Vec::new();
    for _ in 1..width.max(1) {
        let g = lib.choose(rng).expect("nonempty").clone();
        let below = groups.last().expect("nonempty");
        let ker = diffs.last().map(GroupHom::kernel).unwrap_or_else(|| Subgroup::whole(below));
        let homs: Vec<GroupHom> = enumerate_homs(&g, below)?
            .into_iter()
            .filter(|h| {
                let im = h.image();
                im.is_subset_of(&ker) && im.is_normal()
            })
            .collect();
        let nonzero: Vec<&GroupHom> = homs.iter().filter(|h| !h.is_zero()).collect();
        let d = if !nonzero.is_empty() && rng.gen_bool(0.75) {
            (*nonzero.choose(rng).expect("nonempty")).clone()
        } else {
            homs.choose(rng).expect("zero hom always qualifies").clone()
        };
        groups.push(g);
        diffs.push(d);
    }
    let c = ChainComplex::new(lo, groups, diffs)?;
    c.check_proper()?;
    Ok(c)
}

/// `count` complexes on `[0, width)` from the stream seeded with `seed`.
pub fn random_proper_complexes(seed: u64, count: usize, width: usize) -> Result<Vec<ChainComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_proper_complex(&mut rng, 0, width)).collect()
}

/// `K(A, n)` as `Γ` of `A` concentrated in degree `n`, up to degree `d`.
pub fn eilenberg_maclane(a: &FiniteGroup, n: usize, d: usize) -> Result<TruncatedSimplicialGroup> {
    dold_kan_gamma(&ChainComplex::concentrated(a, n as i32), d)
}

/// Named simplicial groups of the corpus.
pub fn simplicial_corpus() -> Result<Vec<(String, TruncatedSimplicialGroup)>> {
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let s3 = symmetric(3);
    let v4 = by_name("V4")?;
    let xms = crossed_module_corpus()?;
    let xm = |name: &str| xms.iter().find(|(n, _)| n == name).map(|(_, x)| x.clone()).expect("corpus name");
    Ok(vec![
        ("dis_c2".into(), dis(&c2, 3)),
        ("dis_s3".into(), dis(&s3, 3)),
        ("ind_c2".into(), ind(&c2, 3)),
        ("ind_s3".into(), ind(&s3, 3)),
        ("k_c2_1".into(), eilenberg_maclane(&c2, 1, 3)?),
        ("k_v4_1".into(), eilenberg_maclane(&v4, 1, 3)?),
        ("k_c2_2".into(), eilenberg_maclane(&c2, 2, 3)?),
        ("k_c3_2".into(), eilenberg_maclane(&c3, 2, 3)?),
        ("nerve_a3_s3".into(), nerve_of_crossed_module(&xm("a3_s3"), 3)?),
        ("nerve_c4_c2".into(), nerve_of_crossed_module(&xm("c4_c2"), 3)?),
        ("nerve_mod_c3_c2".into(), nerve_of_crossed_module(&xm("mod_c3_c2"), 2)?),
    ])
}

/// Moore complexes of the simplicial corpus followed by four random proper
/// complexes of width 3.
pub fn moore_corpus() -> Result<Vec<Object>> {
    let mut out = Vec::new();
    for (name, x) in simplicial_corpus()? {
        out.push(Object::new(name, moore(&x)?.chain.into_chain().trimmed()));
    }
    for (i, c) in random_proper_complexes(RANDOM_SEED, 4, 3)?.into_iter().enumerate() {
        out.push(Object::new(format!("random_{i}"), c));
    }
    Ok(out)
}

/// Named crossed modules; `a3_s3` and `c4_c2` first.
pub fn crossed_module_corpus() -> Result<Vec<(String, CrossedModule)>> {
    let s3 = symmetric(3);
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let c4 = FiniteGroup::cyclic(4);
    let (_, a3_incl) = Subgroup::from_elements(&s3, &alternating_in_s3(&s3))?.to_group();
    let (_, c2_incl) = Subgroup::from_elements(&c4, &[0, 2])?.to_group();
    let a4 = alternating(4);
    let v4_in_a4 = crate::group::commutator_subgroup(&a4);
    let (_, v4_incl) = v4_in_a4.to_group();
    let q8 = quaternion();
    let q8_mod_z = quotient(&q8, &center(&q8))?;
    let inversion = GroupAction::from_fn(&c2, &c3, |b, a| if b == 0 { a } else { c3.inv(a) })?;
    Ok(vec![
        ("a3_s3".into(), CrossedModule::normal_inclusion(&a3_incl)?),
        ("c4_c2".into(), CrossedModule::central_extension(&GroupHom::from_fn(&c4, &c2, |x| x % 2)?)?),
        ("conj_s3".into(), CrossedModule::conjugation(&s3)),
        ("c2_c4".into(), CrossedModule::normal_inclusion(&c2_incl)?),
        ("v4_a4".into(), CrossedModule::normal_inclusion(&v4_incl)?),
        ("q8_v4".into(), CrossedModule::central_extension(&q8_mod_z.projection)?),
        ("conj_q8".into(), CrossedModule::conjugation(&q8)),
        ("ab_c3".into(), CrossedModule::abelian(&c3)?),
        ("dis_s3".into(), CrossedModule::discrete(&s3)),
        ("mod_c3_c2".into(), CrossedModule::module(&inversion)?),
    ])
}

fn alternating_in_s3(s3: &FiniteGroup) -> Vec<usize> {
    s3.elements().filter(|&x| s3.element_order(x) != 2).collect()
}

/// Crossed complexes: every corpus crossed module in degrees 1, 0, and
/// three longer complexes.
pub fn crossed_complex_corpus() -> Result<Vec<(String, CrossedComplex)>> {
    let mut out = Vec::new();
    for (name, xm) in crossed_module_corpus()? {
        out.push((format!("crs_{name}"), CrossedComplex::from_crossed_module(&xm)?));
    }
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let c4 = FiniteGroup::cyclic(4);
    let one = FiniteGroup::trivial();

    let ext = ChainComplex::new(
        0,
        vec![c2.clone(), c4.clone(), c2.clone()],
        vec![GroupHom::from_fn(&c4, &c2, |x| x % 2)?, GroupHom::from_fn(&c2, &c4, |x| 2 * x)?],
    )?;
    out.push(("crs_c2_c4_c2".into(), CrossedComplex::with_trivial_actions(&ext)?));

    let twisted = ChainComplex::new(0, vec![c2.clone(), one.clone(), c3.clone()], vec![
        GroupHom::zero(&one, &c2),
        GroupHom::zero(&c3, &one),
    ])?;
    let inversion: Vec<Vec<usize>> = (0..2).map(|b| c3.elements().map(|a| if b == 0 { a } else { c3.inv(a) }).collect()).collect();
    let one_action = vec![vec![0]; 2];
    out.push(("crs_c3_1_c2".into(), CrossedComplex::new(&twisted, vec![one_action, inversion])?));

    let s3 = symmetric(3);
    let conj = CrossedModule::conjugation(&s3);
    let top = ChainComplex::new(0, vec![s3.clone(), s3.clone(), c2.clone()], vec![
        GroupHom::identity(&s3),
        GroupHom::zero(&c2, &s3),
    ])?;
    let trivial_c2: Vec<Vec<usize>> = vec![vec![0, 1]; 6];
    out.push(("crs_c2_s3_s3".into(), CrossedComplex::new(&top, vec![conj.action.clone(), trivial_c2])?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let m = moore_corpus().unwrap();
        assert!(m.len() >= 12);
        assert!(m.iter().all(|o| o.chain.is_proper()));
        assert!(crossed_module_corpus().unwrap().len() >= 5);
        assert!(crossed_complex_corpus().unwrap().len() >= 13);
    }

    #[test]
    fn random_complexes_are_seeded() {
        let a = random_proper_complexes(7, 5, 4).unwrap();
        let b = random_proper_complexes(7, 5, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.orders(), y.orders());
            assert!(x.diffs().iter().zip(y.diffs()).all(|(d, e)| d.same_map(e)));
        }
        assert!(a.iter().all(|c| c.orders().len() == 4));
    }
}
