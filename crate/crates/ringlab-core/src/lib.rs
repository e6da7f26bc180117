#![cfg_attr(not(feature = "std"), no_std)]
//! Exact arithmetic and structural queries for finite rings.
//!
//! A [`FiniteRing`] is an immutable carrier built compositionally from a
//! [`RingExpr`] (integers mod n, Galois fields, matrix and upper-triangular
//! rings, products, quotients, corners, explicit Cayley tables). Every
//! element is a canonical integer code in `[0, cardinality)`, so enumeration
//! order, witnesses, and reports are reproducible across runs.
//!
//! On top of the carrier sit three layers:
//!
//! * [`idem`] — the commutator / anti-commutator calculus for idempotent
//!   pairs, Bott-Duffin invertibility, and the classical idempotent
//!   identities, bundled into a per-pair diagnostic report;
//! * [`deciders`] — exhaustive and unit-based decision procedures for the
//!   existence of an idempotent pair with invertible commutator
//!   ("property K") or anti-commutator ("property K-bar"), plus the
//!   classification of matrix rings over local and commutative bases;
//! * [`recognizer`] — constructive recognition of 2x2 matrix rings: witness
//!   transformations, explicit matrix units, and certified isomorphisms
//!   `R = M2(eRe)`.
//!
//! The crate is `no_std` compatible (`alloc` required); disable the default
//! `std` feature for embedded use.

extern crate alloc;

pub mod deciders;
pub mod error;
pub mod expr;
pub mod idem;
mod ideal;
mod iso;
mod matrix;
pub mod recognizer;
mod ring;

pub use error::RingError;
pub use expr::{ElemLit, RingExpr};
pub use ideal::{IdealSet, Projection};
pub use iso::find_isomorphism;
pub use matrix::{int_adjugate_inverse, int_det, RingMatrix};
pub use ring::{build_ring, Caps, Element, FiniteRing, RawTable, RingBuilder};

pub type Result<T> = core::result::Result<T, RingError>;
