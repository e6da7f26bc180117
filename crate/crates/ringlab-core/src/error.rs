//! Error type shared by every layer of the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building rings or running the
/// idempotent machinery on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// A ring expression is structurally invalid (zero modulus, empty
    /// product, non-prime Galois characteristic, ...).
    InvalidExpr(String),
    /// The polynomial handed to a Galois-field constructor factors over Z_p.
    IrreduciblePoly(String),
    /// An element required to be idempotent is not.
    NotIdempotent,
    /// A construction or sweep would exceed a configured cap.
    CapExceeded {
        what: &'static str,
        limit: u64,
        attempted: u64,
    },
    /// A candidate ideal is not closed under the ideal operations.
    NotIdeal(String),
    /// Cayley-table input failed the ring axioms.
    AxiomViolation(String),
    /// Elements of two different rings were combined.
    MixedRing,
    /// An element literal does not denote an element of the target ring.
    BadLiteral(String),
    /// Determinant/trace requested over a non-commutative base ring.
    NotCommutativeBase,
    /// Unsupported matrix dimension (determinants stop at 4x4).
    UnsupportedDimension(usize),
    /// Mutually equivalent conditions evaluated differently; this signals an
    /// arithmetic bug, never a mathematical possibility.
    ConsistencyViolation(String),
    /// The pair handed to the two-units construction is not a pair of units
    /// summing to one.
    NotUnitsSummingToOne,
    /// The pair handed to the corner extraction is not an idempotent pair
    /// with invertible commutator.
    NotAKWitness,
    /// No chain of witness transformations connects the two kinds.
    NoPath {
        from: &'static str,
        to: &'static str,
    },
    /// A construction that is guaranteed by a theorem failed to verify;
    /// signals an implementation bug.
    VerificationFailed(String),
    /// The element pair is not a completable idempotent.
    NotCompletable,
    /// The element pair is not a completable involution.
    NotCompletableInvolution,
    /// A finite search that must succeed by a theorem found nothing;
    /// signals an implementation bug.
    SearchFailed(String),
    /// The two-units construction needs a matrix size of at least 2.
    MNotSupported,
    /// The matrix-ring classifier only covers local and commutative bases.
    NotApplicable(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::InvalidExpr(msg) => write!(f, "invalid ring expression: {msg}"),
            RingError::IrreduciblePoly(msg) => write!(f, "polynomial is not irreducible: {msg}"),
            RingError::NotIdempotent => write!(f, "element is not idempotent"),
            RingError::CapExceeded {
                what,
                limit,
                attempted,
            } => write!(f, "{what} cap exceeded: {attempted} > {limit}"),
            RingError::NotIdeal(msg) => write!(f, "not an ideal: {msg}"),
            RingError::AxiomViolation(msg) => write!(f, "ring axioms violated: {msg}"),
            RingError::MixedRing => write!(f, "elements belong to different rings"),
            RingError::BadLiteral(msg) => write!(f, "bad element literal: {msg}"),
            RingError::NotCommutativeBase => write!(f, "base ring is not commutative"),
            RingError::UnsupportedDimension(n) => write!(f, "unsupported matrix dimension {n}"),
            RingError::ConsistencyViolation(msg) => {
                write!(f, "internal consistency violation: {msg}")
            }
            RingError::NotUnitsSummingToOne => {
                write!(f, "elements are not units summing to one")
            }
            RingError::NotAKWitness => {
                write!(f, "pair is not an idempotent pair with invertible commutator")
            }
            RingError::NoPath { from, to } => {
                write!(f, "no transformation path from witness kind {from} to {to}")
            }
            RingError::VerificationFailed(msg) => write!(f, "verification failed: {msg}"),
            RingError::NotCompletable => write!(f, "not a completable idempotent"),
            RingError::NotCompletableInvolution => write!(f, "not a completable involution"),
            RingError::SearchFailed(msg) => write!(f, "search failed: {msg}"),
            RingError::MNotSupported => write!(f, "matrix size must be at least 2"),
            RingError::NotApplicable(msg) => write!(f, "classification not applicable: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RingError {}
