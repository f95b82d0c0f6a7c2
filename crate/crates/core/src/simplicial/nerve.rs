use super::TruncatedSimplicialGroup;
use crate::budget;
use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::group::{semidirect_product, Elem, FiniteGroup, GroupHom};

/// A string of `n` composable arrows `b → δ(a_1)b → δ(a_2)δ(a_1)b → …`,
/// written `(a_1, …, a_n; b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Chain {
    arrows: Vec<Elem>,
    base: Elem,
}

struct Encoder<'a> {
    xm: &'a CrossedModule,
}

impl Encoder<'_> {
    /// Arrow `j` as the element `(a_j, x_{j-1})` of `A ⋊ B`.
    fn tuple(&self, c: &Chain) -> Vec<Elem> {
        let na = self.xm.a.order();
        let mut x = c.base;
        c.arrows
            .iter()
            .map(|&a| {
                let g = a + na * x;
                x = self.xm.b.mul(self.xm.delta[a], x);
                g
            })
            .collect()
    }

    fn chain(&self, t: &[Elem]) -> Chain {
        let na = self.xm.a.order();
        Chain { arrows: t.iter().map(|g| g % na).collect(), base: t.first().map_or(0, |g| g / na) }
    }
}

/// The nerve of the internal groupoid `A ⋊ B ⇉ B`, degrees `0..=d`.
/// `X_n` is the group of length-`n` strings inside `(A ⋊ B)^n`.
pub fn nerve_of_crossed_module(xm: &CrossedModule, d: usize) -> Result<TruncatedSimplicialGroup> {
    crate::crossed::validate_crossed_module(xm).into_result()?;
    let (na, nb) = (xm.a.order() as u128, xm.b.order() as u128);
    let limit = budget::current().max_group as u128;
    let needed = na.checked_pow(d as u32).and_then(|p| p.checked_mul(nb)).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::BudgetExceeded { what: format!("nerve in degree {d}"), needed, limit });
    }
    let arrows = semidirect_product(&xm.a, &xm.b, &xm.action_obj())?.group;
    let enc = Encoder { xm };
    let mut levels: Vec<(FiniteGroup, Vec<Chain>)> = Vec::with_capacity(d + 1);
    levels.push((xm.b.clone(), xm.b.elements().map(|b| Chain { arrows: vec![], base: b }).collect()));
    for n in 1..=d {
        let mut strings = Vec::with_capacity(needed as usize);
        let mut arrows_buf = vec![0; n];
        loop {
            for b in xm.b.elements() {
                strings.push(Chain { arrows: arrows_buf.clone(), base: b });
            }
            let Some(k) = (0..n).find(|&k| arrows_buf[k] + 1 < xm.a.order()) else { break };
            arrows_buf[k] += 1;
            arrows_buf[..k].iter_mut().for_each(|v| *v = 0);
        }
        let tuples = strings.iter().map(|c| enc.tuple(c)).collect();
        let g = FiniteGroup::from_tuples(vec![arrows.clone(); n], tuples);
        let chains = g.elements().map(|x| enc.chain(&g.decode(x))).collect();
        levels.push((g, chains));
    }
    let locate = |n: usize, c: &Chain| -> Elem {
        if n == 0 {
            c.base
        } else {
            levels[n].0.encode(&enc.tuple(c))
        }
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        let (src, chains) = &levels[n];
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let f = GroupHom::from_fn(src, &levels[n - 1].0, |x| {
                let c = &chains[x];
                let mut arrows = c.arrows.clone();
                let mut base = c.base;
                if i == 0 {
                    base = xm.b.mul(xm.delta[arrows.remove(0)], base);
                } else if i == n {
                    arrows.pop();
                } else {
                    let composed = xm.a.mul(arrows[i], arrows[i - 1]);
                    arrows.splice(i - 1..=i, [composed]);
                }
                locate(n - 1, &Chain { arrows, base })
            })?;
            fs.push(f);
        }
        faces.push(fs);
    }
    let mut degeneracies = Vec::with_capacity(d + 1);
    for n in 0..=d {
        if n == d {
            degeneracies.push(Vec::new());
            continue;
        }
        let (src, chains) = &levels[n];
        let ss = (0..=n)
            .map(|i| {
                GroupHom::from_fn(src, &levels[n + 1].0, |x| {
                    let c = &chains[x];
                    let mut arrows = c.arrows.clone();
                    arrows.insert(i, 0);
                    locate(n + 1, &Chain { arrows, base: c.base })
                })
            })
            .collect::<Result<Vec<_>>>()?;
        degeneracies.push(ss);
    }
    let groups = levels.into_iter().map(|(g, _)| g).collect();
    TruncatedSimplicialGroup::new(groups, faces, degeneracies, (d >= 2).then_some(2))
}

/// `N_1 ≅ A` under `a ↦ (a⁻¹; δ(a))`, the generic element of `ker d_0`.
#[cfg(test)]
pub(crate) fn moore_one_element(xm: &CrossedModule, a: Elem) -> Vec<Elem> {
    let na = xm.a.order();
    vec![xm.a.inv(a) + na * xm.delta[a]]
}

#[cfg(test)]
mod tests {
    use super::super::{homotopy_groups, moore};
    use super::*;
    use crate::group::library::symmetric;

    #[test]
    fn nerve_orders_and_moore() {
        let s3 = symmetric(3);
        let xm = CrossedModule::conjugation(&s3);
        let x = nerve_of_crossed_module(&xm, 3).unwrap();
        assert_eq!(x.orders(), vec![6, 36, 216, 1296]);
        let m = moore(&x).unwrap();
        assert_eq!(m.chain.orders(), vec![6, 6, 1, 1]);
        let pis = homotopy_groups(&x, 2).unwrap();
        assert!(pis.iter().all(FiniteGroup::is_trivial));
        let n1 = x.group(1).encode(&moore_one_element(&xm, 3));
        assert!(m.normalized[1].contains(n1));
    }

    #[test]
    fn nerve_homotopy_of_module() {
        let c2 = FiniteGroup::cyclic(2);
        let xm = CrossedModule::abelian(&c2).unwrap();
        let x = nerve_of_crossed_module(&xm, 2).unwrap();
        let pis: Vec<usize> = homotopy_groups(&x, 1).unwrap().iter().map(FiniteGroup::order).collect();
        assert_eq!(pis, vec![1, 2]);
    }
}
