//! Error type shared by the fallible operations of this crate.
//!
//! Most operations in this crate are total on their documented domains and
//! panic on programming errors (such as constructing an invalid partition).
//! Operations whose failure is part of the contract — basis conversion of a
//! vector outside the Schur span, domain restrictions on `n`, unsupported
//! truncation degrees — return [`Error`] instead.

use thiserror::Error;

/// Errors reported by fallible library operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A polynomial could not be written in the Schur basis.
    ///
    /// The Schur polynomials of a fixed degree span that degree, so this
    /// only occurs if the input is corrupt (e.g. hand-built monomials of
    /// inconsistent degree).
    #[error("polynomial is not an F2-combination of Schur polynomials: {0}")]
    NotInSchurSpan(String),
    /// An element with constant term 0 has no multiplicative inverse.
    #[error("ring element has constant term 0 and is not invertible")]
    NotInvertible,
    /// A parameter was outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// `n` is not in the case required by the requested closed-form analysis.
    #[error("n = {n} is in case {found}, but this analysis requires case {required}")]
    WrongCase {
        /// The dimension that was classified.
        n: u32,
        /// The case label that was found.
        found: char,
        /// The case label the operation requires.
        required: char,
    },
    /// A request exceeded the degree range covered by stored tables.
    #[error("degree {requested} exceeds the supported bound {max}: {what}")]
    DegreeOutOfRange {
        /// Degree that was asked for.
        requested: u32,
        /// Largest supported degree.
        max: u32,
        /// Which table or series imposed the bound.
        what: &'static str,
    },
    /// A linear system had no solution or no unique solution.
    #[error("linear system: {0}")]
    LinearSystem(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
