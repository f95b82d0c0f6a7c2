//! Corpus-level audits of the truncation torsion theories: TT1/TT2, lattice
//! order, heredity, restriction to subcategories, pretorsion theories built
//! from ordered pairs, and E-torsion theories.
//!
//! Objects are handled through their Moore complexes (or crossed-module
//! data for the E-torsion audits). Every report is a finite, exhaustive
//! check over the objects it names.

mod axioms;
mod etors;
mod pretorsion;

use std::fmt;

use serde::Serialize;

pub use axioms::{
    adjacent_pairs, heredity_check, lattice_order_check, quotient_complexes, subcomplexes, tt_axioms_check,
    HeredityReport, LatticeReport, Tt1Failure, Tt2Entry, TtReport,
};
pub use etors::{e_torsion_check_xmod, perf_ab, perf_ab_check, PerfAb, PerfAbReport, XmodEEntry, XmodEReport};
pub use pretorsion::{
    classify_trivial_object, pretorsion_decompose, remark_factorizations, verify_preexact, z_member, z_trivial,
    PreexactReport, PretorsionDecomposition, RemarkReport, TrivialPattern, ZFactorization, ZRoute,
};

use crate::chain::{ChainComplex, ChainSES, Theory};
use crate::error::{Error, Result};

/// A named chain complex, usually the Moore complex of a simplicial group.
#[derive(Clone, Debug)]
pub struct Object {
    pub name: String,
    pub chain: ChainComplex,
}

impl Object {
    pub fn new(name: impl Into<String>, chain: ChainComplex) -> Object {
        Object { name: name.into(), chain }
    }
}

/// The category a theory is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Simp,
    /// Moore complex trivial above `m`
    MNgeq(i32),
    /// Moore complex trivial below `m`
    MGeq(i32),
    Crs,
    /// crossed complexes trivial above `m`
    CrsNgeq(i32),
    Ch,
    Pch,
}

impl Ambient {
    /// Parses `simp`, `m-ngeq:M`, `m-geq:M`, `crs`, `crs-ngeq:M`, `ch`, `pch`.
    pub fn parse(s: &str) -> Result<Ambient> {
        let s = s.trim().replace('_', "-");
        let bad = || Error::Malformed(format!("unknown ambient `{s}`"));
        let degree = |d: &str| d.trim().parse::<i32>().map_err(|_| bad());
        match s.split_once(':') {
            None => match s.as_str() {
                "simp" => Ok(Ambient::Simp),
                "crs" => Ok(Ambient::Crs),
                "ch" => Ok(Ambient::Ch),
                "pch" => Ok(Ambient::Pch),
                _ => Err(bad()),
            },
            Some(("m-ngeq", d)) => Ok(Ambient::MNgeq(degree(d)?)),
            Some(("m-geq", d)) => Ok(Ambient::MGeq(degree(d)?)),
            Some(("crs-ngeq", d)) => Ok(Ambient::CrsNgeq(degree(d)?)),
            Some(_) => Err(bad()),
        }
    }

    pub fn contains(self, c: &ChainComplex) -> bool {
        match self {
            Ambient::Simp | Ambient::Ch => true,
            Ambient::Pch => c.is_proper(),
            Ambient::Crs => crossed_shape(c),
            Ambient::MNgeq(m) => Theory::MuNgeq(m).is_torsion_free(c),
            Ambient::CrsNgeq(m) => crossed_shape(c) && Theory::MuNgeq(m).is_torsion_free(c),
            Ambient::MGeq(m) => Theory::MuGeq(m).is_torsion(c),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Simp => f.write_str("simp"),
            Ambient::MNgeq(m) => write!(f, "m-ngeq:{m}"),
            Ambient::MGeq(m) => write!(f, "m-geq:{m}"),
            Ambient::Crs => f.write_str("crs"),
            Ambient::CrsNgeq(m) => write!(f, "crs-ngeq:{m}"),
            Ambient::Ch => f.write_str("ch"),
            Ambient::Pch => f.write_str("pch"),
        }
    }
}

/// Proper, and abelian from degree 2 on.
fn crossed_shape(c: &ChainComplex) -> bool {
    c.is_proper() && (2.max(c.lo())..=c.hi()).all(|n| c.group(n).is_abelian())
}

/// What a theory becomes inside an ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    Effective,
    /// `(0, everything)`
    TrivialTorsion,
    /// `(everything, 0)`
    AllTorsion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TheoryId {
    pub theory: Theory,
    pub ambient: Ambient,
}

impl TheoryId {
    pub fn new(theory: Theory, ambient: Ambient) -> TheoryId {
        TheoryId { theory, ambient }
    }

    /// Inside objects trivial above `m` every theory at or below `μ_{m≥}`
    /// has zero torsion; inside objects trivial below `m` every theory at
    /// or above `μ_{≥m}` has zero torsion-free part.
    pub fn restriction(self) -> Restriction {
        let r = self.theory.rank();
        match self.ambient {
            Ambient::MNgeq(m) | Ambient::CrsNgeq(m) if r <= Theory::MuNgeq(m).rank() => Restriction::TrivialTorsion,
            Ambient::MGeq(m) if r >= Theory::MuGeq(m).rank() => Restriction::AllTorsion,
            _ => Restriction::Effective,
        }
    }

    /// The decomposition of an ambient member.
    pub fn decompose(self, c: &ChainComplex) -> Result<ChainSES> {
        if !self.ambient.contains(c) {
            return Err(Error::Malformed(format!("object is not in the ambient {}", self.ambient)));
        }
        self.theory.decompose(c)
    }

    /// Whether the computed decomposition of an ambient member has the shape
    /// the restriction predicts.
    pub fn collapse_holds(self, c: &ChainComplex) -> Result<bool> {
        let ses = self.decompose(c)?;
        Ok(match self.restriction() {
            Restriction::Effective => true,
            Restriction::TrivialTorsion => ses.sub.is_zero(),
            Restriction::AllTorsion => ses.quotient.is_zero(),
        })
    }
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.theory, self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupHom};

    #[test]
    fn collapse_in_m1() {
        let c2 = FiniteGroup::cyclic(2);
        let ind = ChainComplex::two_term(&GroupHom::identity(&c2), 0);
        let amb = Ambient::MNgeq(1);
        assert!(amb.contains(&ind));
        for t in [Theory::MuNgeq(1), Theory::MuGeq(2), Theory::MuNgeq(2)] {
            let id = TheoryId::new(t, amb);
            assert_eq!(id.restriction(), Restriction::TrivialTorsion);
            assert!(id.collapse_holds(&ind).unwrap());
        }
        let id = TheoryId::new(Theory::MuNgeq(0), amb);
        assert_eq!(id.restriction(), Restriction::Effective);
        assert!(!id.decompose(&ind).unwrap().sub.is_zero());
    }

    #[test]
    fn parse_ambients() {
        for s in ["simp", "m-ngeq:2", "m-geq:1", "crs", "crs-ngeq:3", "ch", "pch"] {
            assert_eq!(Ambient::parse(s).unwrap().to_string(), s);
        }
        assert!(Ambient::parse("grp").is_err());
    }
}
