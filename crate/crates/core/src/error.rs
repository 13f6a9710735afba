use thiserror::Error;

use crate::quadratic::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Which condition of a nil(2)-complex of length 2 failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ComplexCondition {
    /// `∂₁` must be a nil(2)-module whose Peiffer pairing is trivial.
    I,
    /// `C₂` abelian, an equivariant `C₀`-group, with `∂₁(C₁)` acting trivially.
    II,
    /// `∂₁∂₂ = 1`.
    III,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is malformed: {0}")]
    MalformedTable(String),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("not a right action by automorphisms: {0}")]
    NotAction(String),
    #[error("subgroup is not normal: {g}^-1 * {n} * {g} leaves the subgroup")]
    NotNormal { n: usize, g: usize },
    #[error("group is not abelian: {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("incompatible groups: {0}")]
    TypeMismatch(String),
    #[error("pre-crossed law fails at m={m}, q={q}: ∂(m^q) != q^-1 ∂(m) q")]
    NotEquivariant { m: usize, q: usize },
    #[error("not a nil(2)-module: length-3 Peiffer bracket nontrivial at ({x}, {y}, {z})")]
    NotNil2 { x: usize, y: usize, z: usize },
    #[error("map is not well defined on classes: {0}")]
    NotWellDefined(String),
    #[error("quadratic module axioms fail:\n{0}")]
    AxiomFailure(Box<VerificationReport>),
    #[error("precondition ({condition:?}) fails: {detail}")]
    PreconditionFailure {
        condition: ComplexCondition,
        detail: String,
    },
    #[error("quadratic map is not trivial at tensor element {element}")]
    OmegaNotTrivial { element: usize },
    #[error("derived property fails: {0}")]
    DerivedPropertyFailure(String),
    #[error("not a monomorphism: kernel contains {kernel_element}")]
    NotMonomorphism { kernel_element: usize },
    #[error("not an epimorphism: {missing} is not in the image")]
    NotEpimorphism { missing: usize },
    #[error("morphism conditions fail: {0}")]
    NotMorphism(String),
    #[error("no factoring morphism exists: {0}")]
    NoFactorization(String),
    #[error("factoring morphism is not unique: {candidates} candidates")]
    NonUnique { candidates: usize },
    #[error("not computable: {0}")]
    NotComputable(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved reference {0:?}")]
    UnresolvedReference(String),
    #[error("unsupported bundle version {0:?}")]
    UnsupportedVersion(String),
}
