//! Truncated simplicial groups.
//!
//! A `d`-truncated simplicial group stores `X_0 ..= X_d` with faces
//! `d_i: X_n → X_{n-1}` and degeneracies `s_i: X_n → X_{n+1}`. Faces of
//! `Ind(G)` delete a coordinate and degeneracies double one.

mod dold_kan;
mod moore;
mod nerve;

use crate::budget;
use crate::error::{Error, IdentityKind, Result};
use crate::group::{direct_power, normal_closure, quotient, Elem, FiniteGroup, GroupHom, Quotient};

pub use dold_kan::dold_kan_gamma;
pub use moore::{classify_membership, homotopy_groups, is_group_t_complex, moore, Membership, MooreComplex};
pub use nerve::nerve_of_crossed_module;
pub(crate) use moore::reaching as moore_reaching;

#[derive(Clone, Debug)]
pub struct TruncatedSimplicialGroup {
    groups: Vec<FiniteGroup>,
    /// `faces[n][i] = d_i: X_n → X_{n-1}`; `faces[0]` is empty
    faces: Vec<Vec<GroupHom>>,
    /// `degeneracies[n][i] = s_i: X_n → X_{n+1}` for `n < d`
    degeneracies: Vec<Vec<GroupHom>>,
    coskeletal_above: Option<usize>,
}

impl TruncatedSimplicialGroup {
    /// Validates shapes, endpoints, the simplicial identities and the
    /// coskeletal claim.
    pub fn new(
        groups: Vec<FiniteGroup>,
        faces: Vec<Vec<GroupHom>>,
        degeneracies: Vec<Vec<GroupHom>>,
        coskeletal_above: Option<usize>,
    ) -> Result<TruncatedSimplicialGroup> {
        let x = Self::new_unchecked(groups, faces, degeneracies, coskeletal_above);
        x.check_shape()?;
        x.check_identities()?;
        x.check_coskeletal()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        groups: Vec<FiniteGroup>,
        faces: Vec<Vec<GroupHom>>,
        degeneracies: Vec<Vec<GroupHom>>,
        coskeletal_above: Option<usize>,
    ) -> TruncatedSimplicialGroup {
        TruncatedSimplicialGroup { groups, faces, degeneracies, coskeletal_above }
    }

    pub fn degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, n: usize) -> &FiniteGroup {
        &self.groups[n]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn face(&self, n: usize, i: usize) -> &GroupHom {
        &self.faces[n][i]
    }

    pub fn faces(&self, n: usize) -> &[GroupHom] {
        &self.faces[n]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &GroupHom {
        &self.degeneracies[n][i]
    }

    pub fn degeneracies(&self, n: usize) -> &[GroupHom] {
        &self.degeneracies[n]
    }

    pub fn coskeletal_above(&self) -> Option<usize> {
        self.coskeletal_above
    }

    pub fn orders(&self) -> Vec<usize> {
        self.groups.iter().map(FiniteGroup::order).collect()
    }

    /// Whether the stored degrees determine the whole simplicial group.
    pub fn is_determined(&self) -> bool {
        self.coskeletal_above.is_some_and(|k| k < self.degree())
    }

    /// The `k`-truncation.
    pub fn truncate(&self, k: usize) -> TruncatedSimplicialGroup {
        let k = k.min(self.degree());
        let mut degeneracies = self.degeneracies[..k].to_vec();
        degeneracies.push(Vec::new());
        let cosk = self.coskeletal_above.filter(|&c| c <= k);
        Self::new_unchecked(self.groups[..=k].to_vec(), self.faces[..=k].to_vec(), degeneracies, cosk)
    }

    fn check_shape(&self) -> Result<()> {
        let d = self.groups.len();
        if d == 0 || self.faces.len() != d || self.degeneracies.len() != d {
            return Err(Error::Malformed("one group, face list and degeneracy list per degree".into()));
        }
        for n in 0..d {
            let nf = if n == 0 { 0 } else { n + 1 };
            let ns = if n + 1 == d { 0 } else { n + 1 };
            if self.faces[n].len() != nf || self.degeneracies[n].len() != ns {
                return Err(Error::Malformed(format!("degree {n} needs {nf} faces and {ns} degeneracies")));
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.source() != &self.groups[n] || f.target() != &self.groups[n - 1] {
                    return Err(Error::Malformed(format!("face d_{i} in degree {n} has the wrong endpoints")));
                }
            }
            for (i, s) in self.degeneracies[n].iter().enumerate() {
                if s.source() != &self.groups[n] || s.target() != &self.groups[n + 1] {
                    return Err(Error::Malformed(format!("degeneracy s_{i} in degree {n} has the wrong endpoints")));
                }
            }
        }
        if self.coskeletal_above.is_some_and(|k| k > self.degree()) {
            return Err(Error::Malformed("coskeletal degree above the truncation".into()));
        }
        Ok(())
    }

    /// All simplicial identities, checked on generators (both sides are homs).
    pub fn check_identities(&self) -> Result<()> {
        let d = self.degree();
        let fail = |kind, degree, indices: Vec<usize>, element| {
            Err(Error::IdentityViolation { kind, degree, indices, element })
        };
        let f = |n: usize, i: usize| &self.faces[n][i];
        let s = |n: usize, i: usize| &self.degeneracies[n][i];
        for n in 2..=d {
            for &x in self.groups[n].generators() {
                for j in 1..=n {
                    for i in 0..j {
                        if f(n - 1, i).apply(f(n, j).apply(x)) != f(n - 1, j - 1).apply(f(n, i).apply(x)) {
                            return fail(IdentityKind::FaceFace, n, vec![i, j], x);
                        }
                    }
                }
            }
        }
        for n in 0..d.saturating_sub(1) {
            for &x in self.groups[n].generators() {
                for j in 0..=n {
                    for i in 0..=j {
                        if s(n + 1, i).apply(s(n, j).apply(x)) != s(n + 1, j + 1).apply(s(n, i).apply(x)) {
                            return fail(IdentityKind::DegenDegen, n, vec![i, j], x);
                        }
                    }
                }
            }
        }
        for n in 0..d {
            for &x in self.groups[n].generators() {
                for j in 0..=n {
                    let sx = s(n, j).apply(x);
                    for i in 0..=n + 1 {
                        let lhs = f(n + 1, i).apply(sx);
                        let (kind, rhs) = if i < j {
                            (IdentityKind::FaceDegenBelow, s(n - 1, j - 1).apply(f(n, i).apply(x)))
                        } else if i == j || i == j + 1 {
                            (IdentityKind::FaceDegenUnit, x)
                        } else {
                            (IdentityKind::FaceDegenAbove, s(n - 1, j).apply(f(n, i - 1).apply(x)))
                        };
                        if lhs != rhs {
                            return fail(kind, n, vec![i, j], x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Above the coskeletal degree `k`, each `X_{m+1}` maps bijectively onto
    /// the simplicial kernel of `X_m` through its faces.
    fn check_coskeletal(&self) -> Result<()> {
        let Some(k) = self.coskeletal_above else { return Ok(()) };
        for m in k..self.degree() {
            let x = &self.groups[m + 1];
            let faces = &self.faces[m + 1];
            let trivial = x.elements().skip(1).find(|&y| faces.iter().all(|f| f.apply(y) == 0));
            if let Some(y) = trivial {
                return Err(Error::IdentityViolation {
                    kind: IdentityKind::Coskeletal,
                    degree: m + 1,
                    indices: vec![k],
                    element: y,
                });
            }
            let count = simplicial_kernel(&self.groups[m], &self.faces[m], m, true)?.len_count;
            if count != x.order() {
                return Err(Error::IdentityViolation {
                    kind: IdentityKind::Coskeletal,
                    degree: m + 1,
                    indices: vec![k, count],
                    element: 0,
                });
            }
        }
        Ok(())
    }
}

/// Compatible face tuples `(y_0, …, y_{m+1})` in `X_m` with
/// `d_i y_j = d_{j-1} y_i` for `i < j`.
pub(crate) struct Kernel {
    pub tuples: Vec<Vec<Elem>>,
    pub len_count: usize,
}

pub(crate) fn simplicial_kernel(xm: &FiniteGroup, faces: &[GroupHom], m: usize, count_only: bool) -> Result<Kernel> {
    let limit = budget::current().max_group;
    let ord = xm.order();
    let tables: Vec<&[Elem]> = faces.iter().map(GroupHom::map).collect();
    let mut buckets: Vec<Vec<Elem>> = Vec::new();
    if m > 0 {
        buckets = vec![Vec::new(); faces[0].target().order()];
        for y in 0..ord {
            buckets[tables[0][y]].push(y);
        }
    }
    let mut out = Kernel { tuples: Vec::new(), len_count: 0 };
    let mut cur: Vec<Elem> = Vec::with_capacity(m + 2);
    fn go(
        m: usize,
        ord: usize,
        tables: &[&[Elem]],
        buckets: &[Vec<Elem>],
        cur: &mut Vec<Elem>,
        out: &mut Kernel,
        count_only: bool,
        limit: usize,
    ) -> Result<()> {
        let j = cur.len();
        if j == m + 2 {
            out.len_count += 1;
            if out.len_count > limit {
                return Err(Error::BudgetExceeded {
                    what: "simplicial kernel".into(),
                    needed: out.len_count as u128,
                    limit: limit as u128,
                });
            }
            if !count_only {
                out.tuples.push(cur.clone());
            }
            return Ok(());
        }
        let all: Vec<Elem>;
        let candidates: &[Elem] = if j == 0 || m == 0 {
            all = (0..ord).collect();
            &all
        } else {
            &buckets[tables[j - 1][cur[0]]]
        };
        for &y in candidates {
            if (1..j).all(|i| tables[i][y] == tables[j - 1][cur[i]]) {
                cur.push(y);
                go(m, ord, tables, buckets, cur, out, count_only, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(m, ord, &tables, &buckets, &mut cur, &mut out, count_only, limit)?;
    Ok(out)
}

/// `Dis(G)` up to degree `d`: every `X_n = G`, every face and degeneracy the
/// identity.
pub fn dis(g: &FiniteGroup, d: usize) -> TruncatedSimplicialGroup {
    let id = GroupHom::identity(g);
    let faces = (0..=d).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect();
    let degeneracies = (0..=d).map(|n| if n == d { vec![] } else { vec![id.clone(); n + 1] }).collect();
    let cosk = (d >= 1).then_some(1);
    TruncatedSimplicialGroup::new_unchecked(vec![g.clone(); d + 1], faces, degeneracies, cosk)
}

/// `Ind(G)` up to degree `d`: `X_n = G^{n+1}`.
pub fn ind(g: &FiniteGroup, d: usize) -> TruncatedSimplicialGroup {
    let groups: Vec<FiniteGroup> = (0..=d).map(|n| direct_power(g, n + 1)).collect();
    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    for n in 1..=d {
        let (x, y) = (&groups[n], &groups[n - 1]);
        faces.push(
            (0..=n)
                .map(|i| {
                    GroupHom::from_fn_unchecked(x, y, |e| {
                        let mut c = x.decode(e);
                        c.remove(i);
                        y.encode(&c)
                    })
                })
                .collect(),
        );
    }
    for n in 0..=d {
        if n == d {
            degeneracies.push(Vec::new());
            continue;
        }
        let (x, y) = (&groups[n], &groups[n + 1]);
        degeneracies.push(
            (0..=n)
                .map(|i| {
                    GroupHom::from_fn_unchecked(x, y, |e| {
                        let mut c = x.decode(e);
                        c.insert(i, c[i]);
                        y.encode(&c)
                    })
                })
                .collect(),
        );
    }
    TruncatedSimplicialGroup::new_unchecked(groups, faces, degeneracies, Some(0))
}

/// `X_0 / ⟨d_0(y) d_1(y)⁻¹⟩`, the coequalizer of the two faces.
pub fn pi0(x: &TruncatedSimplicialGroup) -> Result<Quotient> {
    let x0 = x.group(0);
    if x.degree() == 0 {
        return quotient(x0, &normal_closure(x0, &[]));
    }
    let (d0, d1) = (x.face(1, 0), x.face(1, 1));
    let seeds: Vec<Elem> = x.group(1).generators().iter().map(|&y| x0.mul(d0.apply(y), x0.inv(d1.apply(y)))).collect();
    quotient(x0, &normal_closure(x0, &seeds))
}

/// Extends the `k`-truncation of `x` to degree `d` by simplicial kernels.
pub fn coskeleton_extend(x: &TruncatedSimplicialGroup, k: usize, d: usize) -> Result<TruncatedSimplicialGroup> {
    if k > x.degree() {
        return Err(Error::TruncationTooLow { have: x.degree(), need: k });
    }
    let base = x.truncate(k);
    let mut groups = base.groups;
    let mut faces = base.faces;
    let mut degeneracies = base.degeneracies;
    for m in k..d {
        let xm = groups[m].clone();
        let kernel = simplicial_kernel(&xm, &faces[m], m, false)?;
        let next = FiniteGroup::from_tuples(vec![xm.clone(); m + 2], kernel.tuples);
        let new_faces: Vec<GroupHom> =
            (0..m + 2).map(|i| GroupHom::from_fn_unchecked(&next, &xm, |t| next.decode(t)[i])).collect();
        let mut new_degs = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let map = GroupHom::from_fn_unchecked(&xm, &next, |e| {
                let coords: Vec<Elem> = (0..m + 2)
                    .map(|i| {
                        if i < j {
                            degeneracies[m - 1][j - 1].apply(faces[m][i].apply(e))
                        } else if i == j || i == j + 1 {
                            e
                        } else {
                            degeneracies[m - 1][j].apply(faces[m][i - 1].apply(e))
                        }
                    })
                    .collect();
                next.encode(&coords)
            });
            new_degs.push(map);
        }
        degeneracies[m] = new_degs;
        degeneracies.push(Vec::new());
        faces.push(new_faces);
        groups.push(next);
    }
    let out = TruncatedSimplicialGroup::new_unchecked(groups, faces, degeneracies, Some(k));
    out.check_identities()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::symmetric;

    #[test]
    fn standard_objects_validate() {
        let c2 = FiniteGroup::cyclic(2);
        let x = dis(&c2, 3);
        TruncatedSimplicialGroup::new(x.groups.clone(), x.faces.clone(), x.degeneracies.clone(), x.coskeletal_above)
            .unwrap();
        let y = ind(&c2, 2);
        assert_eq!(y.orders(), vec![2, 4, 8]);
        TruncatedSimplicialGroup::new(y.groups.clone(), y.faces.clone(), y.degeneracies.clone(), y.coskeletal_above)
            .unwrap();
    }

    #[test]
    fn forced_identity_failure() {
        let c2 = FiniteGroup::cyclic(2);
        let id = GroupHom::identity(&c2);
        let zero = GroupHom::zero(&c2, &c2);
        let r = TruncatedSimplicialGroup::new(
            vec![c2.clone(), c2.clone()],
            vec![vec![], vec![zero, id.clone()]],
            vec![vec![id], vec![]],
            None,
        );
        assert!(matches!(r, Err(Error::IdentityViolation { kind: IdentityKind::FaceDegenUnit, .. })));
    }

    #[test]
    fn pi0_values() {
        let s3 = symmetric(3);
        assert_eq!(pi0(&dis(&s3, 2)).unwrap().group.order(), 6);
        assert_eq!(pi0(&ind(&s3, 2)).unwrap().group.order(), 1);
        assert!(dis(&FiniteGroup::trivial(), 2).orders().iter().all(|&o| o == 1));
    }

    #[test]
    fn coskeleta() {
        let c3 = FiniteGroup::cyclic(3);
        let x = coskeleton_extend(&dis(&c3, 0), 0, 2).unwrap();
        assert_eq!(x.orders(), vec![3, 9, 27]);
        let y = coskeleton_extend(&dis(&c3, 1), 1, 3).unwrap();
        assert_eq!(y.orders(), vec![3, 3, 3, 3]);
        let z = ind(&symmetric(3), 3);
        TruncatedSimplicialGroup::new(z.groups.clone(), z.faces.clone(), z.degeneracies.clone(), Some(0)).unwrap();
    }
}
