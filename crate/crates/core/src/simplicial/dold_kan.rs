//! The inverse Dold–Kan functor on chain complexes of abelian groups.

use super::{moore, TruncatedSimplicialGroup};
use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupHom};

/// A monotone surjection `[n] ↠ [k]` as its value list.
type Surj = Vec<usize>;

/// All surjections out of `[n]`, one per subset of jump positions.
fn surjections(n: usize) -> Vec<Surj> {
    (0..1usize << n)
        .map(|mask| {
            let mut v = vec![0; n + 1];
            for t in 1..=n {
                v[t] = v[t - 1] + ((mask >> (t - 1)) & 1);
            }
            v
        })
        .collect()
}

fn target(s: &Surj) -> usize {
    *s.last().unwrap()
}

struct Level {
    group: FiniteGroup,
    /// summands kept (nontrivial `C_k`), in coordinate order
    summands: Vec<Surj>,
}

fn level(c: &ChainComplex, n: usize) -> Level {
    let summands: Vec<Surj> = surjections(n).into_iter().filter(|s| c.order(target(s) as i32) > 1).collect();
    let factors: Vec<FiniteGroup> = summands.iter().map(|s| c.group(target(s) as i32)).collect();
    let group = match factors.len() {
        0 => FiniteGroup::trivial(),
        _ => FiniteGroup::product_of(factors),
    };
    Level { group, summands }
}

fn coords(l: &Level, x: Elem) -> Vec<Elem> {
    if l.summands.is_empty() {
        Vec::new()
    } else {
        l.group.decode(x)
    }
}

fn encode(l: &Level, c: &[Elem]) -> Elem {
    if l.summands.is_empty() {
        0
    } else {
        l.group.encode(c)
    }
}

/// The map `X(θ): Γ_n → Γ_m` for a monotone `θ: [m] → [n]`: the summand of
/// `σ` goes to the summand of the epi part `τ` of `σθ = ητ`, through the
/// identity when `η = id`, through `∂_k` when `η = δ^k`, and to zero
/// otherwise.
fn induced(c: &ChainComplex, from: &Level, to: &Level, theta: &[usize]) -> GroupHom {
    let routes: Vec<Option<(usize, bool)>> = from
        .summands
        .iter()
        .map(|sigma| {
            let k = target(sigma);
            let rho: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
            let top = *rho.last().unwrap();
            let onto = (0..=top).all(|v| rho.contains(&v));
            if !onto || top + 1 < k {
                return None;
            }
            let through_d = top + 1 == k;
            to.summands.iter().position(|s| *s == rho).map(|p| (p, through_d))
        })
        .collect();
    GroupHom::from_fn_unchecked(&from.group, &to.group, |x| {
        let xs = coords(from, x);
        let mut out = vec![0; to.summands.len()];
        for (q, route) in routes.iter().enumerate() {
            if let Some((p, through_d)) = *route {
                let k = target(&from.summands[q]) as i32;
                let v = if through_d { c.diff(k).apply(xs[q]) } else { xs[q] };
                let g = c.group(target(&to.summands[p]) as i32);
                out[p] = g.mul(out[p], v);
            }
        }
        encode(to, &out)
    })
}

/// `Γ(C)_n = ⊕_{[n]↠[k]} C_k` up to degree `d`. On return the identity
/// summands are checked to give a chain isomorphism `C ≅ N(Γ(C))`.
pub fn dold_kan_gamma(c: &ChainComplex, d: usize) -> Result<TruncatedSimplicialGroup> {
    if let Some(n) = (c.lo()..0.min(c.hi() + 1)).find(|&n| c.order(n) > 1) {
        return Err(Error::Malformed(format!("nontrivial group in negative degree {n}")));
    }
    if let Some((n, a, b)) = c.abelian_witness() {
        return Err(Error::NotAbelian { degree: n, a, b });
    }
    let levels: Vec<Level> = (0..=d).map(|n| level(c, n)).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        faces.push(
            (0..=n)
                .map(|i| {
                    let theta: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
                    induced(c, &levels[n], &levels[n - 1], &theta)
                })
                .collect(),
        );
    }
    let mut degeneracies = Vec::new();
    for n in 0..=d {
        if n == d {
            degeneracies.push(Vec::new());
            continue;
        }
        degeneracies.push(
            (0..=n)
                .map(|i| {
                    let theta: Vec<usize> = (0..n + 2).map(|t| if t <= i { t } else { t - 1 }).collect();
                    induced(c, &levels[n], &levels[n + 1], &theta)
                })
                .collect(),
        );
    }
    let top = c.support().map_or(-1, |(_, b)| b);
    let cosk = usize::try_from(top + 1).ok().filter(|&k| k <= d);
    let groups = levels.iter().map(|l| l.group.clone()).collect();
    let x = TruncatedSimplicialGroup::new_unchecked(groups, faces, degeneracies, cosk);
    x.check_identities()?;
    gamma_unit(c, &x, &levels)?;
    Ok(x)
}

/// `C_n → N(Γ C)_n` onto the summand of `id_{[n]}`, verified as a chain
/// isomorphism on degrees `0..=d`.
fn gamma_unit(c: &ChainComplex, x: &TruncatedSimplicialGroup, levels: &[Level]) -> Result<ChainMap> {
    let m = moore(x)?;
    let d = x.degree();
    let src = c.on_window(0, d as i32);
    let tgt = m.chain.chain().clone();
    let comps = (0..=d)
        .map(|n| {
            let l = &levels[n];
            let ident: Surj = (0..=n).collect();
            let pos = l.summands.iter().position(|s| *s == ident);
            let cn = c.group(n as i32);
            GroupHom::from_fn_unchecked(&cn, &tgt.group(n as i32), |v| {
                let Some(p) = pos else { return 0 };
                let mut out = vec![0; l.summands.len()];
                out[p] = v;
                m.normalized[n].position(encode(l, &out)).expect("identity summand is normalized")
            })
        })
        .collect();
    let f = ChainMap::new(&src, &tgt, comps)?;
    if !f.is_iso() {
        return Err(Error::Malformed("N(Γ(C)) is not isomorphic to C".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::super::homotopy_groups;
    use super::*;
    use crate::group::library::klein;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(2).iter().filter(|s| target(s) == 1).count(), 2);
        assert_eq!(surjections(4).len(), 16);
    }

    #[test]
    fn gamma_shapes() {
        let c2 = FiniteGroup::cyclic(2);
        let x = dold_kan_gamma(&ChainComplex::concentrated(&c2, 1), 2).unwrap();
        assert_eq!(x.orders(), vec![1, 2, 4]);
        let y = dold_kan_gamma(&ChainComplex::concentrated(&c2, 0), 2).unwrap();
        assert_eq!(y.orders(), vec![2, 2, 2]);
        let z = dold_kan_gamma(&ChainComplex::concentrated(&klein(), 2), 4).unwrap();
        assert_eq!(z.orders(), vec![1, 1, 4, 64, 4096]);
        let nonab = ChainComplex::concentrated(&crate::group::library::symmetric(3), 1);
        assert!(matches!(dold_kan_gamma(&nonab, 2), Err(Error::NotAbelian { .. })));
    }

    #[test]
    fn eilenberg_maclane() {
        let c3 = FiniteGroup::cyclic(3);
        let k = dold_kan_gamma(&ChainComplex::concentrated(&c3, 2), 3).unwrap();
        let pis: Vec<usize> = homotopy_groups(&k, 2).unwrap().iter().map(FiniteGroup::order).collect();
        assert_eq!(pis, vec![1, 1, 3]);
    }

    #[test]
    fn nontrivial_differential() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let p = GroupHom::from_fn(&c4, &c2, |x| x % 2).unwrap();
        let x = dold_kan_gamma(&ChainComplex::two_term(&p, 0), 3).unwrap();
        assert_eq!(x.orders(), vec![2, 8, 2 * 16, 2 * 64]);
    }
}
