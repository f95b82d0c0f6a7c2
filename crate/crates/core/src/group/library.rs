//! Named small groups.

use super::{direct_product_of, FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// Permutations of `0..n` in lexicographic order, so the identity comes first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// The group on `perms` under `(p·q)(x) = p(q(x))`.
fn permutation_group(perms: &[Vec<usize>]) -> FiniteGroup {
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    FiniteGroup::from_fn(perms.len(), |a, b| {
        let (p, q) = (&perms[a], &perms[b]);
        let r: Vec<usize> = q.iter().map(|&x| p[x]).collect();
        index[r.as_slice()]
    })
}

pub fn symmetric(n: usize) -> FiniteGroup {
    permutation_group(&permutations(n))
}

pub fn alternating(n: usize) -> FiniteGroup {
    let even: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| parity(p) == 0).collect();
    permutation_group(&even)
}

/// The sign of `symmetric(n)` onto `C2`.
pub fn sign_hom(s: &FiniteGroup, n: usize) -> GroupHom {
    let perms = permutations(n);
    assert_eq!(perms.len(), s.order(), "sign_hom expects symmetric({n})");
    GroupHom::new_unchecked(s, &FiniteGroup::cyclic(2), perms.iter().map(|p| parity(p)).collect())
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::from_fn(4, |a, b| a ^ b)
}

/// The dihedral group of order `2n`, `rⁱsʲ` at index `i + n·j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn(2 * n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let k = if j == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((j + l) % 2)
    })
}

/// `⟨a, x | a²ᵐ, x² = aᵐ, x a x⁻¹ = a⁻¹⟩` of order `4m`, `aⁱxʲ` at `i + 2m·j`.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let n = 2 * m;
    FiniteGroup::from_fn(2 * n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let k = if j == 1 { (n - k) % n } else { k };
        let extra = if j == 1 && l == 1 { m } else { 0 };
        (i + k + extra) % n + n * ((j + l) % 2)
    })
}

pub fn quaternion() -> FiniteGroup {
    dicyclic(2)
}

/// Parses names such as `C6`, `V4`, `S3`, `A4`, `D5`, `Q8`, `Dic3` and
/// `x`-separated direct products like `C2xC4`.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let parts: Vec<&str> = name.split('x').collect();
    if parts.len() > 1 {
        let factors = parts.iter().map(|p| by_name(p)).collect::<Result<Vec<_>>>()?;
        return Ok(direct_product_of(&factors).group);
    }
    let bad = || Error::Document(format!("unknown group name {name:?}"));
    let num = |prefix: &str| -> Result<usize> {
        name.strip_prefix(prefix).and_then(|d| d.parse().ok()).filter(|&n: &usize| n > 0).ok_or_else(bad)
    };
    match name {
        "V4" => Ok(klein()),
        "Q8" => Ok(quaternion()),
        "1" | "0" => Ok(FiniteGroup::trivial()),
        _ if name.starts_with("Dic") => Ok(dicyclic(num("Dic")?)),
        _ if name.starts_with('C') => Ok(FiniteGroup::cyclic(num("C")?)),
        _ if name.starts_with('S') => Ok(symmetric(num("S")?)),
        _ if name.starts_with('A') => Ok(alternating(num("A")?)),
        _ if name.starts_with('D') => Ok(dihedral(num("D")?)),
        _ => Err(bad()),
    }
}

/// One representative of every isomorphism type of order at most 12.
pub fn groups_up_to_order_12() -> Vec<(&'static str, FiniteGroup)> {
    let names = [
        "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8",
        "C9", "C3xC3", "C10", "D5", "C11", "C12", "C2xC6", "A4", "D6", "Dic3",
    ];
    names.iter().map(|&n| (n, by_name(n).expect("library name"))).collect()
}

/// The library name of a group isomorphic to `g`, among orders up to 12.
pub fn identify(g: &FiniteGroup) -> Option<&'static str> {
    let profile = |h: &FiniteGroup| {
        let mut orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
        orders.sort_unstable();
        orders
    };
    let want = profile(g);
    groups_up_to_order_12().into_iter().find_map(|(name, h)| {
        if h.order() != g.order() || profile(&h) != want {
            return None;
        }
        let homs = crate::group::enumerate_homs(&h, g).ok()?;
        homs.iter().any(GroupHom::is_injective).then_some(name)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, commutator_subgroup};

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(by_name("C2xC2xC2").unwrap().order(), 8);
        assert!(by_name("Z7").is_err());
    }

    #[test]
    fn identification() {
        assert_eq!(identify(&symmetric(3)), Some("S3"));
        assert_eq!(identify(&dihedral(4)), Some("D4"));
        assert_eq!(identify(&by_name("C3xC4").unwrap()), Some("C12"));
        assert_eq!(identify(&FiniteGroup::trivial()), Some("C1"));
        assert_eq!(identify(&alternating(5)), None);
    }

    #[test]
    fn small_library_is_valid_and_distinct() {
        let groups = groups_up_to_order_12();
        assert_eq!(groups.len(), 24);
        // crude invariants: order, abelian, center size, element-order profile
        let mut sigs = Vec::new();
        for (name, g) in &groups {
            assert!(super::super::make_group(&g.table()).is_ok(), "{name}");
            let mut profile: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
            profile.sort();
            sigs.push((g.order(), g.is_abelian(), center(g).order(), commutator_subgroup(g).order(), profile));
        }
        let mut dedup = sigs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), sigs.len());
    }

    #[test]
    fn a5_is_perfect() {
        let a5 = alternating(5);
        assert_eq!(commutator_subgroup(&a5).order(), 60);
    }
}
