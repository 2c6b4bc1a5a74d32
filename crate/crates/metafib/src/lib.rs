//! Exact computation and mechanical verification of meta-Fibonacci sequences.
//!
//! The center of the crate is the family of nested recurrences
//!
//! ```text
//! f(n) = f(n - f(n-u)) + f(n - v)
//! ```
//!
//! and its relatives, evaluated with arbitrary-precision integers. On top of
//! the general evaluator sit:
//!
//! - [`closed`]: proved closed forms and two-term recurrences for the `h` and
//!   `g` families, dispatched by the initial-condition parameters `(a, b)`,
//!   each cross-checkable against the general evaluator;
//! - [`partitions`]: the binary partition function `bin(n)`, the
//!   Prouhet–Thue–Morse signs, and the alternating-sum identities that link
//!   them to `h`;
//! - [`automata`]: a DFAO engine, the Thue–Morse and `r(2n)` automata, the
//!   mod-2 recurrences for `r(n) = h(n) mod 2`, and a 2-kernel explorer;
//! - [`series`]: truncated formal power series over the integers and over
//!   GF(2), used to verify Mahler-type functional equations exactly,
//!   coefficient by coefficient;
//! - [`classifier`]: detection of eventual constancy, arithmetic progressions
//!   and exact linear recurrences in residue-class subsequences.
//!
//! Everything is exact: no floating point, no tolerances. A check either
//! holds on the stated range or it does not.

pub mod automata;
pub mod bigjson;
pub mod classifier;
pub mod closed;
pub mod partitions;
pub mod recurrence;
pub mod series;

use thiserror::Error;

/// Crate-wide error type. Failures of a *sequence* (dying, ill-founded
/// references) are data, not errors; this type covers misuse of the API.
#[derive(Debug, Error)]
pub enum Error {
    /// The recurrence description itself is malformed.
    #[error("invalid recurrence spec: {0}")]
    InvalidSpec(String),
    /// An operation was called outside its documented domain.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
