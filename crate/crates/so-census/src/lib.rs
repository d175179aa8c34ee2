//! Exact enumeration of inequivalent binary self-orthogonal codes.
//!
//! The library counts `Psi_{k,n}` (inequivalent self-orthogonal `[n,k]` codes
//! over GF(2)) and `Psi_{<=k,n}` (dimension at most `k`) by Burnside orbit
//! counting over `GL(k,F2) x S_n`: the fixed points of each pair of conjugacy
//! classes are counted exactly through the classification of binary quadratic
//! forms, and the per-class/per-cycle-type totals are summed with exact
//! rational arithmetic.
//!
//! Layout:
//! * [`gf2`] — bit-packed matrices and polynomials over GF(2),
//! * [`quad_form`] — Dickson types of binary quadratic forms and their algebra,
//! * [`gl_classes`] — conjugacy classes of `GL(k,F2)` with centralizer orders,
//! * [`partition`] — integer partitions (cycle types of `S_n`),
//! * [`fix_engine`] — `|Fix(A, P_lambda)|` for a class representative `A`,
//! * [`census`] — the Burnside sums, mass formula and auxiliary counts,
//! * [`oracle`] — brute-force enumeration of small codes for cross-checking.

pub mod census;
pub mod fix_engine;
pub mod gf2;
pub mod gl_classes;
pub mod oracle;
pub mod partition;
pub mod quad_form;

/// Errors reported by fallible operations across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("reciprocal requires a nonzero constant term")]
    ZeroConstantTerm,
    #[error("invalid quadratic form type ({n},{r},{u},{v})")]
    InvalidType { n: u64, r: u64, u: u8, v: u8 },
    #[error("cost guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("automorphism group order must be >= 1")]
    ZeroAutOrder,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
