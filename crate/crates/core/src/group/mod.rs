//! Finite groups as index-based multiplication tables.
//!
//! Elements are `usize` indices and the identity is always index 0. Small
//! groups store an explicit Cayley table. Direct products, large embedded
//! subgroups and large closed sets of tuples keep a structural representation
//! and compute products on demand, so the high simplicial degrees of `Ind(G)`
//! or Dold–Kan objects stay cheap.

mod action;
mod construct;
mod enumerate;
mod hom;
pub mod library;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use action::GroupAction;
pub use construct::{
    center, commutator_subgroup, direct_power, direct_product, direct_product_of,
    is_central_extension, quotient, semidirect_product, DirectProduct, Quotient, Semidirect,
};
pub use enumerate::{
    all_subgroups, automorphisms, enumerate_homs, enumerate_homs_with, normal_subgroups,
};
pub use hom::GroupHom;
pub use subgroup::{generated_subgroup, intersect, normal_closure, Subgroup};

use crate::error::{Error, GroupLaw, Result};

pub type Elem = usize;

/// Groups up to this order are always stored as explicit tables.
pub(crate) const TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

struct Inner {
    order: usize,
    repr: Repr,
    inverse: Vec<u32>,
    generators: OnceLock<Vec<Elem>>,
}

enum Repr {
    Table(Vec<u32>),
    /// Mixed-radix encoding, first factor least significant.
    Product { factors: Vec<FiniteGroup>, strides: Vec<usize>, table: Option<Vec<u32>> },
    /// A subgroup of `parent`, element `i` being `elements[i]`.
    Embedded { parent: FiniteGroup, elements: Vec<Elem>, index: HashMap<Elem, u32> },
    /// A closed set of tuples under the componentwise law of `factors`,
    /// element `i` being the `i`-th tuple in lexicographic order.
    Tuples { factors: Vec<FiniteGroup>, data: Vec<Elem>, index: HashMap<Vec<Elem>, u32>, table: Option<Vec<u32>> },
}

impl FiniteGroup {
    /// Validates a Cayley table: identity at index 0, associativity, inverses.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup { law: GroupLaw::Shape, witness: vec![] });
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup { law: GroupLaw::Shape, witness: vec![a] });
            }
            if let Some(b) = row.iter().position(|&x| x >= n) {
                return Err(Error::NotAGroup { law: GroupLaw::Shape, witness: vec![a, b] });
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup { law: GroupLaw::Identity, witness: vec![a] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup {
                            law: GroupLaw::Associativity,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return Err(Error::NotAGroup { law: GroupLaw::Inverse, witness: vec![a] });
            }
        }
        let flat = table.iter().flatten().map(|&x| x as u32).collect();
        Ok(Self::from_flat_unchecked(n, flat))
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u32>) -> FiniteGroup {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverse[a] = row.iter().position(|&x| x == 0).expect("inverse exists") as u32;
        }
        Self::with_repr(order, Repr::Table(table), inverse)
    }

    /// Tabulates `mul`, which the caller guarantees to be a group law with
    /// identity 0.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(Elem, Elem) -> Elem) -> FiniteGroup {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_flat_unchecked(order, table)
    }

    fn with_repr(order: usize, repr: Repr, inverse: Vec<u32>) -> FiniteGroup {
        FiniteGroup {
            inner: Arc::new(Inner { order, repr, inverse, generators: OnceLock::new() }),
        }
    }

    pub fn trivial() -> FiniteGroup {
        static TRIVIAL: OnceLock<FiniteGroup> = OnceLock::new();
        TRIVIAL.get_or_init(|| Self::from_flat_unchecked(1, vec![0])).clone()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    pub(crate) fn product_of(factors: Vec<FiniteGroup>) -> FiniteGroup {
        let mut strides = Vec::with_capacity(factors.len());
        let mut order = 1usize;
        for f in &factors {
            strides.push(order);
            order = order.checked_mul(f.order()).expect("product order overflows");
        }
        let mut inverse = vec![0u32; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            let mut acc = 0;
            for (f, &s) in factors.iter().zip(&strides) {
                acc += f.inv((x / s) % f.order()) * s;
            }
            *inv = acc as u32;
        }
        let mut g = Self::with_repr(order, Repr::Product { factors, strides, table: None }, inverse);
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    table.push(g.mul(a, b) as u32);
                }
            }
            let inner = Arc::get_mut(&mut g.inner).expect("fresh group");
            if let Repr::Product { table: t, .. } = &mut inner.repr {
                *t = Some(table);
            }
        }
        g
    }

    /// The group on `tuples`, which the caller guarantees to be closed under
    /// the componentwise law of `factors` and to contain the identity.
    pub(crate) fn from_tuples(factors: Vec<FiniteGroup>, mut tuples: Vec<Vec<Elem>>) -> FiniteGroup {
        tuples.sort_unstable();
        tuples.dedup();
        let n = tuples.len();
        let w = factors.len();
        debug_assert!(tuples[0].iter().all(|&c| c == 0));
        let index: HashMap<Vec<Elem>, u32> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let law = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { (0..w).map(|k| factors[k].mul(a[k], b[k])).collect() };
        let inverse = tuples
            .iter()
            .map(|t| index[&(0..w).map(|k| factors[k].inv(t[k])).collect::<Vec<_>>()])
            .collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut table = Vec::with_capacity(n * n);
            for a in &tuples {
                for b in &tuples {
                    table.push(index[&law(a, b)]);
                }
            }
            table
        });
        let data = tuples.into_iter().flatten().collect();
        Self::with_repr(n, Repr::Tuples { factors, data, index, table }, inverse)
    }

    /// Coordinates of a product or tuple element, first factor first.
    pub fn decode(&self, x: Elem) -> Vec<Elem> {
        match &self.inner.repr {
            Repr::Product { factors, strides, .. } => {
                factors.iter().zip(strides).map(|(f, &s)| (x / s) % f.order()).collect()
            }
            Repr::Tuples { factors, data, .. } => data[x * factors.len()..(x + 1) * factors.len()].to_vec(),
            _ => vec![x],
        }
    }

    /// Inverse of [`decode`](Self::decode); panics on a tuple outside the group.
    pub fn encode(&self, coords: &[Elem]) -> Elem {
        match &self.inner.repr {
            Repr::Product { strides, .. } => coords.iter().zip(strides).map(|(&c, &s)| c * s).sum(),
            Repr::Tuples { index, .. } => index[coords] as usize,
            _ => coords[0],
        }
    }

    /// Like [`encode`](Self::encode) but `None` for a tuple outside the group.
    pub fn try_encode(&self, coords: &[Elem]) -> Option<Elem> {
        match &self.inner.repr {
            Repr::Tuples { index, .. } => index.get(coords).map(|&i| i as usize),
            _ => Some(self.encode(coords)),
        }
    }

    /// The subgroup on `elements` (sorted, containing 0) as a group in its own
    /// right, element `i` corresponding to `elements[i]`.
    pub(crate) fn embedded(parent: &FiniteGroup, elements: &[Elem]) -> FiniteGroup {
        let n = elements.len();
        let index: HashMap<Elem, u32> =
            elements.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        if n <= TABLE_LIMIT {
            return Self::from_fn(n, |a, b| {
                index[&parent.mul(elements[a], elements[b])] as usize
            });
        }
        let inverse = elements.iter().map(|&e| index[&parent.inv(e)]).collect();
        Self::with_repr(
            n,
            Repr::Embedded { parent: parent.clone(), elements: elements.to_vec(), index },
            inverse,
        )
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.repr {
            Repr::Table(t) => t[a * self.inner.order + b] as usize,
            Repr::Product { table: Some(t), .. } => t[a * self.inner.order + b] as usize,
            Repr::Product { factors, strides, .. } => {
                let mut acc = 0;
                for (f, &s) in factors.iter().zip(strides) {
                    let n = f.order();
                    acc += f.mul((a / s) % n, (b / s) % n) * s;
                }
                acc
            }
            Repr::Embedded { parent, elements, index } => {
                index[&parent.mul(elements[a], elements[b])] as usize
            }
            Repr::Tuples { table: Some(t), .. } => t[a * self.inner.order + b] as usize,
            Repr::Tuples { factors, data, index, .. } => {
                let w = factors.len();
                let c: Vec<Elem> = (0..w).map(|k| factors[k].mul(data[a * w + k], data[b * w + k])).collect();
                index[&c] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inner.inverse[a] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    /// `g x g⁻¹`
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn product(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A non-commuting pair, if any.
    pub fn noncommuting_pair(&self) -> Option<(Elem, Elem)> {
        let gens = self.generators();
        for &a in gens {
            for &b in gens {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// A greedy generating set: scan elements in index order and keep each
    /// one not already in the span of those kept.
    pub fn generators(&self) -> &[Elem] {
        self.inner.generators.get_or_init(|| {
            let mut closure = subgroup::Closure::new(self);
            let mut gens = Vec::new();
            for x in 1..self.order() {
                if closure.add_generator(x) {
                    gens.push(x);
                    if closure.len() == self.order() {
                        break;
                    }
                }
            }
            gens
        })
    }

    /// The full Cayley table.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.elements().map(|a| self.elements().map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The coordinate groups of a product or tuple group.
    pub fn product_factors(&self) -> Option<&[FiniteGroup]> {
        match &self.inner.repr {
            Repr::Product { factors, .. } | Repr::Tuples { factors, .. } => Some(factors),
            _ => None,
        }
    }

    pub fn ptr_eq(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.order() != other.order() {
            return false;
        }
        match (&self.inner.repr, &other.inner.repr) {
            (Repr::Table(a), Repr::Table(b)) => a == b,
            (Repr::Product { factors: a, .. }, Repr::Product { factors: b, .. }) => a == b,
            (
                Repr::Embedded { parent: p, elements: x, .. },
                Repr::Embedded { parent: q, elements: y, .. },
            ) => p == q && x == y,
            (Repr::Tuples { factors: a, data: x, .. }, Repr::Tuples { factors: b, data: y, .. }) => a == b && x == y,
            _ => {
                self.order() <= TABLE_LIMIT
                    && self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == other.mul(a, b)))
            }
        }
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order())
    }
}

/// Validated construction from a Cayley table.
pub fn make_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    FiniteGroup::from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_laws(g: &FiniteGroup) {
        for a in g.elements() {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn trivial_and_c2_tables() {
        let t = make_group(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let c2 = make_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn s3_from_composed_permutations() {
        // Build the table by composing the six permutations of {0,1,2}
        // explicitly, identity first.
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        let s3 = make_group(&table).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_laws(&s3);
    }

    #[test]
    fn rejects_bad_tables() {
        let err = make_group(&[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { law: GroupLaw::Identity, .. }));
        // identity row/col fine, but 1·1 = 1 leaves 1 without inverse
        let err = make_group(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { law: GroupLaw::Inverse, .. }));
        // a commutative non-associative loop
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = make_group(&bad).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { law: GroupLaw::Associativity, .. }));
        assert!(matches!(
            make_group(&[vec![0, 1], vec![1]]).unwrap_err(),
            Error::NotAGroup { law: GroupLaw::Shape, .. }
        ));
    }

    #[test]
    fn product_repr_matches_table() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let p = FiniteGroup::product_of(vec![c2.clone(), c3.clone()]);
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_laws(&p);
        let tabled = make_group(&p.table()).unwrap();
        assert_eq!(tabled, p);
    }

    #[test]
    fn greedy_generators_span() {
        let s3 = library::symmetric(3);
        let gens = s3.generators().to_vec();
        assert!(gens.len() <= 2);
        let span = generated_subgroup(&s3, &gens);
        assert_eq!(span.order(), 6);
    }
}
