use serde::Serialize;

use super::{coskeleton_extend, TruncatedSimplicialGroup};
use crate::chain::{ChainComplex, ProperChainComplex, Theory};
use crate::error::{Error, Result};
use crate::group::{generated_subgroup, intersect, Elem, FiniteGroup, GroupHom, Subgroup};

/// The Moore complex `N_n = ∩_{i<n} ker d_i` with `δ_n = d_n`, together with
/// the subgroups `N_n, D_n ⊆ X_n`.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub chain: ProperChainComplex,
    pub normalized: Vec<Subgroup>,
    /// `D_n`, generated by the images of all degeneracies into `X_n`
    pub degenerate: Vec<Subgroup>,
    /// `N_n → X_n`
    pub inclusions: Vec<GroupHom>,
}

pub fn moore(x: &TruncatedSimplicialGroup) -> Result<MooreComplex> {
    let d = x.degree();
    let mut normalized = Vec::with_capacity(d + 1);
    let mut groups: Vec<FiniteGroup> = Vec::with_capacity(d + 1);
    let mut inclusions = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let faces = &x.faces(n)[..n.min(x.faces(n).len())];
        let sub = if n == 0 {
            Subgroup::whole(x.group(0))
        } else {
            Subgroup::from_predicate(x.group(n), |y| faces.iter().all(|f| f.apply(y) == 0))
        };
        let (g, incl) = sub.to_group();
        normalized.push(sub);
        groups.push(g);
        inclusions.push(incl);
    }
    let mut diffs = Vec::with_capacity(d);
    for n in 1..=d {
        let dn = x.face(n, n);
        let below = &normalized[n - 1];
        let map: Vec<Elem> = normalized[n]
            .elements()
            .iter()
            .map(|&y| below.position(dn.apply(y)).ok_or_else(|| Error::Malformed(format!("d_{n} leaves N_{}", n - 1))))
            .collect::<Result<_>>()?;
        diffs.push(GroupHom::new_unchecked(&groups[n], &groups[n - 1], map));
    }
    let chain = ProperChainComplex::new(ChainComplex::new(0, groups, diffs)?)?;
    let degenerate = (0..=d)
        .map(|n| {
            if n == 0 {
                return Subgroup::trivial(x.group(0));
            }
            let seeds: Vec<Elem> = x
                .degeneracies(n - 1)
                .iter()
                .flat_map(|s| x.group(n - 1).generators().iter().map(move |&g| s.apply(g)))
                .collect();
            generated_subgroup(x.group(n), &seeds)
        })
        .collect();
    Ok(MooreComplex { chain, normalized, degenerate, inclusions })
}

/// `x` itself when its stored degrees reach `need`, otherwise its coskeletal
/// extension.
pub(crate) fn reaching(x: &TruncatedSimplicialGroup, need: usize) -> Result<TruncatedSimplicialGroup> {
    if x.degree() >= need {
        return Ok(x.clone());
    }
    match x.coskeletal_above() {
        Some(k) => coskeleton_extend(x, k, need),
        None => Err(Error::TruncationTooLow { have: x.degree(), need }),
    }
}

/// `π_n(X) = H_n(N X)` for `0 ≤ n ≤ max_n`.
pub fn homotopy_groups(x: &TruncatedSimplicialGroup, max_n: usize) -> Result<Vec<FiniteGroup>> {
    let y = reaching(x, max_n + 1)?;
    let m = moore(&y)?;
    (0..=max_n as i32).map(|n| m.chain.homology(n)).collect()
}

/// Flags for one degree `n`, read off the Moore complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub n: usize,
    /// Moore complex trivial above `n`
    pub m_ngeq: bool,
    /// Moore complex trivial below `n`
    pub m_geq: bool,
    /// trivial below `n` with `δ_{n+1}` onto `M_n`
    pub ker_cot: bool,
    /// trivial above `n + 1` with `δ_{n+1}` a normal mono
    pub f_tr: bool,
}

/// Membership in `M_{n≥}`, `M_{≥n}`, `Ker(Cot_n)` and `F_{tr_n}` for
/// `n ≤ d`, from the Moore complex of the stored degrees (extended by one
/// coskeletal step when the object is coskeletal at its top degree).
pub fn classify_membership(x: &TruncatedSimplicialGroup) -> Result<Vec<Membership>> {
    let y = match x.coskeletal_above() {
        Some(k) if k == x.degree() => coskeleton_extend(x, k, k + 1)?,
        _ => x.clone(),
    };
    let m = moore(&y)?;
    let c = m.chain.chain();
    Ok((0..=x.degree())
        .map(|n| {
            let k = n as i32;
            Membership {
                n,
                m_ngeq: Theory::MuNgeq(k).is_torsion_free(c),
                m_geq: Theory::MuGeq(k).is_torsion(c),
                ker_cot: Theory::MuNgeq(k).is_torsion(c),
                f_tr: Theory::MuGeq(k + 1).is_torsion_free(c),
            }
        })
        .collect())
}

/// `N_n ∩ D_n = 1` in every stored degree.
pub fn is_group_t_complex(x: &TruncatedSimplicialGroup) -> Result<bool> {
    let m = moore(x)?;
    for (n, d) in m.normalized.iter().zip(&m.degenerate) {
        if !intersect(n, d)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::{dis, ind};
    use super::*;
    use crate::chain::find_chain_iso;
    use crate::group::library::symmetric;

    #[test]
    fn moore_of_dis_and_ind() {
        let s3 = symmetric(3);
        let m = moore(&dis(&s3, 3)).unwrap();
        assert_eq!(m.chain.orders(), vec![6, 1, 1, 1]);
        let c2 = FiniteGroup::cyclic(2);
        let m = moore(&ind(&c2, 3)).unwrap();
        assert_eq!(m.chain.orders(), vec![2, 2, 1, 1]);
        assert!(m.chain.diff(1).is_iso());
        let target = ChainComplex::two_term(&GroupHom::identity(&c2), 0);
        assert!(find_chain_iso(&m.chain.trimmed(), &target).unwrap().is_some());
    }

    #[test]
    fn homotopy() {
        let s3 = symmetric(3);
        let pis = homotopy_groups(&dis(&s3, 1), 2).unwrap();
        assert_eq!(pis.iter().map(FiniteGroup::order).collect::<Vec<_>>(), vec![6, 1, 1]);
        let pis = homotopy_groups(&ind(&s3, 2), 3).unwrap();
        assert!(pis.iter().all(FiniteGroup::is_trivial));
        assert!(homotopy_groups(&dis(&s3, 0), 1).is_err());
    }

    #[test]
    fn memberships() {
        let c2 = FiniteGroup::cyclic(2);
        let f = classify_membership(&dis(&c2, 2)).unwrap();
        assert!(f.iter().all(|m| m.m_ngeq && m.f_tr));
        assert!(f[0].m_geq && !f[1].m_geq && !f[0].ker_cot);
        let f = classify_membership(&ind(&c2, 2)).unwrap();
        assert!(f[0].ker_cot && !f[1].ker_cot);
        assert!(f.iter().all(|m| m.f_tr));
        assert!(!f[0].m_ngeq && f[1].m_ngeq);
    }

    #[test]
    fn t_complexes() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(is_group_t_complex(&dis(&c2, 3)).unwrap());
        assert!(is_group_t_complex(&ind(&c2, 3)).unwrap());
    }
}
