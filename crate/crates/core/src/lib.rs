//! Exact computations with simplicial groups, chain complexes of finite
//! groups and crossed structures: Moore normalization, the truncation
//! torsion theories of the Moore complex, pretorsion and TTF decompositions,
//! crossed-module axioms and homotopy groups.

pub mod acceptance;
pub mod budget;
pub mod chain;
pub mod cli;
pub mod corpus;
pub mod crossed;
pub mod document;
pub mod error;
pub mod group;
pub mod par;
pub mod simplicial;
pub mod torsion;

pub use error::{Error, Result};
