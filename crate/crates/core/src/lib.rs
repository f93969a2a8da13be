//! Exact-arithmetic toolkit for finite-dimensional associative algebras.
//!
//! An algebra is given by its structure constants over an exact base field
//! (ℚ, 𝔽_p, or 𝔽_p(t)). On top of that the crate provides:
//!
//! - derived invariant subspaces: commutator span `[A,A]`, center, Jacobson
//!   radical, derivation space, multiplication algebra ([`algebra`]);
//! - classification of linear operators (derivation, automorphism,
//!   antiautomorphism, Jordan automorphism, membership in the multiplication
//!   algebra) ([`maps`]);
//! - trace-identity checks such as `x·D(x)·x ∈ [A,A]` and `T(x)³ − x³ ∈ [A,A]`
//!   in formal (polarized-coefficient) and pointwise (enumerated) modes
//!   ([`identities`]);
//! - constructive decompositions `D = (inner derivation) + (radical-valued
//!   map)` and `T = α·J` with `α³ = 1` ([`decompose`]);
//! - certification of local derivations, local inner derivations, local inner
//!   automorphisms, and local Jordan automorphisms ([`localmaps`]);
//! - a gallery of named regression fixtures ([`gallery`]) and the JSON file
//!   formats used by the `fdalg` CLI ([`io`]).
//!
//! All arithmetic is exact; no floating point anywhere.

pub mod algebra;
pub mod decompose;
mod enumerate;
pub mod gallery;
pub mod identities;
pub mod io;
pub mod linalg;
pub mod localmaps;
pub mod maps;
pub mod poly;
pub mod scalar;

use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Structured "failure is an answer" outcomes (e.g. a map that provably has
/// no inner-derivation decomposition) are *not* errors; they are encoded in
/// the result types of the operations that produce them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar literal `{0}`")]
    MalformedLiteral(String),
    #[error("zero denominator in scalar literal")]
    ZeroDenominator,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("ambient dimensions do not match")]
    AmbientMismatch,
    #[error("matrix sizes do not match")]
    SizeMismatch,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("malformed structure-constant table: {0}")]
    MalformedTable(String),
    #[error("multiplication table is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("element does not belong to this algebra")]
    AlgebraMismatch,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("no valid radical method: {0}")]
    NoValidMethod(String),
    #[error("enumeration budget exceeded ({needed} > {budget})")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operation requires a matrix-tagged algebra")]
    NotMatrixAlgebra,
    #[error("element is not central")]
    NotCentral,
    #[error("characteristic {actual} violates the guard char ∉ {{{forbidden}}}; pass allow_char_violation to proceed")]
    CharViolation { forbidden: String, actual: u64 },
    #[error("supplied subspace is not a complement subalgebra: {0}")]
    NotAComplement(String),
    #[error("projected part violates the Jordan endomorphism law (hypothesis fails)")]
    JordanEndoFail,
    #[error("map does not fix the unit")]
    UnitNotFixed,
    #[error("algebra kind unsupported for this orbit test")]
    UnsupportedAlgebra,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("i/o or format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
