use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

/// Which group law a candidate multiplication table violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupLaw {
    Shape,
    Identity,
    Associativity,
    Inverse,
}

impl fmt::Display for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupLaw::Shape => "shape",
            GroupLaw::Identity => "identity",
            GroupLaw::Associativity => "associativity",
            GroupLaw::Inverse => "inverse",
        };
        f.write_str(s)
    }
}

/// Simplicial identity families, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// d_i d_j = d_{j-1} d_i for i < j
    FaceFace,
    /// s_i s_j = s_{j+1} s_i for i <= j
    DegenDegen,
    /// d_i s_j = s_{j-1} d_i for i < j
    FaceDegenBelow,
    /// d_j s_j = d_{j+1} s_j = 1
    FaceDegenUnit,
    /// d_i s_j = s_j d_{i-1} for i > j + 1
    FaceDegenAbove,
    /// the object does not match the simplicial kernel it claims to be
    Coskeletal,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a group: {law} fails at {witness:?}")]
    NotAGroup { law: GroupLaw, witness: Vec<usize> },

    #[error("invalid homomorphism: {reason} (witness {witness:?})")]
    InvalidHom { reason: String, witness: Vec<usize> },

    #[error("invalid action: {reason} (witness {witness:?})")]
    InvalidAction { reason: String, witness: Vec<usize> },

    #[error("subgroups live in different parent groups")]
    MismatchedParent,

    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { conjugator: usize, element: usize },

    #[error("budget exceeded for {what}: needs {needed}, limit {limit}")]
    BudgetExceeded { what: String, needed: u128, limit: u128 },

    #[error("differentials compose to a nonzero map at degree {degree}: element {element}")]
    CompositeNotZero { degree: i32, element: usize },

    #[error("chain complex is not proper at degree {degree}: image not normal ({conjugator}·{element}·{conjugator}⁻¹)")]
    NotProper { degree: i32, conjugator: usize, element: usize },

    #[error("components do not commute with the differentials at degree {degree}: element {element}")]
    NotAChainMap { degree: i32, element: usize },

    #[error("malformed complex: {0}")]
    Malformed(String),

    #[error("simplicial identity {kind:?} fails in degree {degree} for indices {indices:?} at element {element}")]
    IdentityViolation { kind: IdentityKind, degree: usize, indices: Vec<usize>, element: usize },

    #[error("group in degree {degree} is not abelian: {a}·{b} ≠ {b}·{a}")]
    NotAbelian { degree: i32, a: usize, b: usize },

    #[error("simplicial group has nontrivial Moore complex in degree {degree} > 1")]
    NotTruncatedAt1 { degree: usize },

    #[error("truncation degree {have} is too low, need {need}")]
    TruncationTooLow { have: usize, need: usize },

    #[error("theories are not ordered: {smaller} is not below {larger}")]
    OrderViolation { smaller: String, larger: String },

    #[error("crossed module differential is not zero at {element}")]
    NotAModule { element: usize },

    #[error("invalid crossed structure: {0}")]
    InvalidCrossed(String),

    #[error("{structure} axiom `{axiom}` fails at {witness:?}")]
    AxiomFailure { structure: &'static str, axiom: &'static str, witness: Vec<usize> },

    #[error("sequence is not exact at degree {degree}: {reason}")]
    NotExact { degree: i32, reason: String },

    #[error("document error: {0}")]
    Document(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAGroup { .. } => "not_a_group",
            Error::InvalidHom { .. } => "invalid_hom",
            Error::InvalidAction { .. } => "invalid_action",
            Error::MismatchedParent => "mismatched_parent",
            Error::NotNormal { .. } => "not_normal",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::CompositeNotZero { .. } => "composite_not_zero",
            Error::NotProper { .. } => "not_proper",
            Error::NotAChainMap { .. } => "not_a_chain_map",
            Error::Malformed(_) => "malformed",
            Error::IdentityViolation { .. } => "identity_violation",
            Error::NotAbelian { .. } => "not_abelian",
            Error::NotTruncatedAt1 { .. } => "not_truncated_at_1",
            Error::TruncationTooLow { .. } => "truncation_too_low",
            Error::OrderViolation { .. } => "order_violation",
            Error::NotAModule { .. } => "not_a_module",
            Error::InvalidCrossed(_) => "invalid_crossed",
            Error::AxiomFailure { .. } => "axiom_failure",
            Error::NotExact { .. } => "not_exact",
            Error::Document(_) => "document",
        }
    }

    /// Structured data sufficient to reproduce the failure.
    pub fn witness(&self) -> Value {
        match self {
            Error::NotAGroup { law, witness } => json!({"law": law, "elements": witness}),
            Error::InvalidHom { witness, .. } | Error::InvalidAction { witness, .. } => {
                json!({"elements": witness})
            }
            Error::NotNormal { conjugator, element } => {
                json!({"conjugator": conjugator, "element": element})
            }
            Error::BudgetExceeded { needed, limit, .. } => {
                json!({"needed": needed.to_string(), "limit": limit.to_string()})
            }
            Error::CompositeNotZero { degree, element } | Error::NotAChainMap { degree, element } => {
                json!({"degree": degree, "element": element})
            }
            Error::NotProper { degree, conjugator, element } => {
                json!({"degree": degree, "conjugator": conjugator, "element": element})
            }
            Error::IdentityViolation { kind, degree, indices, element } => {
                json!({"kind": kind, "degree": degree, "indices": indices, "element": element})
            }
            Error::NotAbelian { degree, a, b } => json!({"degree": degree, "a": a, "b": b}),
            Error::NotTruncatedAt1 { degree } => json!({"degree": degree}),
            Error::TruncationTooLow { have, need } => json!({"have": have, "need": need}),
            Error::NotAModule { element } => json!({"element": element}),
            Error::NotExact { degree, .. } => json!({"degree": degree}),
            Error::AxiomFailure { structure, axiom, witness } => {
                json!({"structure": structure, "axiom": axiom, "elements": witness})
            }
            Error::OrderViolation { smaller, larger } => json!({"smaller": smaller, "larger": larger}),
            Error::Malformed(s) | Error::InvalidCrossed(s) | Error::Document(s) => json!({"reason": s}),
            Error::MismatchedParent => Value::Null,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
