//! Crossed modules, 2-crossed modules, reduced and stable crossed modules,
//! reduced crossed complexes and their E-torsion sequences.
//!
//! Every structure stores its operations as total lookup tables and every
//! validator is exhaustive over element tuples, returning a per-axiom
//! report with the first counterexample found.

mod complex;
mod etorsion;
mod extract;
pub mod mutate;
mod two;
mod xmod;

use serde::Serialize;

pub use complex::{action_preservation_witness, validate_crossed_complex, CrossedComplex};
pub use etorsion::{crs_e_torsion, mod_e_torsion, xmod_ctf_sequences, CrossedSES, CrsETorsion, CtfSequences, ETorsion};
pub use extract::extract_crossed_module;
pub use two::{
    validate_2xm, validate_reduced_2xm, validate_stable, PeifferModule, ReducedTwoCrossedModule,
    StableCrossedModule, TwoCrossedModule,
};
pub use xmod::{
    classify_crossed_module, find_xmod_iso, for_each_xmod_hom, validate_crossed_module, validate_precrossed,
    CrossedModule, XmodClass, XmodHom,
};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub holds: bool,
    /// the first tuple of elements violating the axiom
    pub witness: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub structure: &'static str,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new(structure: &'static str) -> AxiomReport {
        AxiomReport { structure, checks: Vec::new() }
    }

    pub fn record(&mut self, axiom: &'static str, witness: Option<Vec<Elem>>) -> bool {
        let holds = witness.is_none();
        self.checks.push(AxiomCheck { axiom, holds, witness });
        holds
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn into_result(self) -> Result<()> {
        match self.failure() {
            None => Ok(()),
            Some(c) => Err(Error::AxiomFailure {
                structure: self.structure,
                axiom: c.axiom,
                witness: c.witness.clone().unwrap_or_default(),
            }),
        }
    }
}

/// First element of `0..n` for which `bad` holds.
pub(crate) fn find1(n: usize, bad: impl Fn(Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find(|&x| bad(x)).map(|x| vec![x])
}

pub(crate) fn find2(n: usize, m: usize, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find_map(|x| (0..m).find(|&y| bad(x, y)).map(|y| vec![x, y]))
}

pub(crate) fn find3(n: usize, bad: impl Fn(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find_map(|x| find2(n, n, |y, z| bad(x, y, z)).map(|w| vec![x, w[0], w[1]]))
}

/// Checks that `map` is a total hom table `g → h`.
pub(crate) fn hom_witness(
    g: &FiniteGroup,
    h: &FiniteGroup,
    map: &[Elem],
) -> Option<Vec<Elem>> {
    if map.len() != g.order() {
        return Some(vec![map.len()]);
    }
    if let Some(w) = find1(g.order(), |x| map[x] >= h.order()) {
        return Some(w);
    }
    find2(g.order(), g.order(), |x, y| map[g.mul(x, y)] != h.mul(map[x], map[y]))
}

/// Checks that `perms` is an action of `actor` on `space` by automorphisms.
pub(crate) fn action_witness(
    actor: &FiniteGroup,
    space: &FiniteGroup,
    perms: &[Vec<Elem>],
) -> (Option<Vec<Elem>>, Option<Vec<Elem>>) {
    if perms.len() != actor.order() {
        return (Some(vec![perms.len()]), None);
    }
    for (b, p) in perms.iter().enumerate() {
        if let Some(mut w) = hom_witness(space, space, p) {
            w.insert(0, b);
            return (Some(w), None);
        }
        let mut seen = vec![false; space.order()];
        for &y in p {
            if std::mem::replace(&mut seen[y], true) {
                return (Some(vec![b, y]), None);
            }
        }
    }
    let law = find1(space.order(), |x| perms[0][x] != x).map(|w| vec![0, w[0]]).or_else(|| {
        find2(actor.order(), actor.order(), |b, c| {
            let bc = actor.mul(b, c);
            space.elements().any(|x| perms[bc][x] != perms[b][perms[c][x]])
        })
    });
    (None, law)
}
