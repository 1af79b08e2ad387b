//! Finite pointfree spectra.
//!
//! This crate computes, on finite carriers, the objects that make up the
//! quantic and localic spectrum of a commutative localic semiring: frames of
//! saturated opens, quantales of monoid ideals and of ideals, frames of
//! radical ideals, and the points of the spectrum. Every construction is
//! paired with a check against an independent brute-force description so the
//! library doubles as a verifier for the underlying duality and
//! representability results.
//!
//! Everything here is `no_std` (with `alloc`). Elements of every finite
//! structure are plain indices into the structure's carrier; maps are total
//! tables of indices. Subsets of a point poset are `u64` masks, so point
//! posets are limited to 64 elements.

#![no_std]

extern crate alloc;

use alloc::string::String;
use core::fmt;

pub mod algebra;
pub mod catalog;
pub mod iso;
pub mod locale;
pub mod order;
pub mod quantale;
pub mod spectrum;
pub mod suplattice;
pub mod tensor;

pub use algebra::{FiniteCommMonoid, FiniteCommSemiring, LocalicMonoid, LocalicSemiring};
pub use locale::FiniteLocale;
pub use order::{ClosureOperator, FinitePoset, MonotoneMap};
pub use quantale::{HomKind, Quantale};
pub use suplattice::{SupMap, Suplattice};
pub use tensor::{TensorElement, TensorLattice, TensorSpace};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Size limits for the exhaustive parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest product carrier for which a tensor lattice is materialised.
    pub max_tensor_carrier: usize,
    /// Largest carrier (or generating set) searched subset-exhaustively.
    pub max_exhaustive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_tensor_carrier: 36,
            max_exhaustive: 16,
        }
    }
}

impl Caps {
    pub fn check(&self, what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two distinct elements ended up mutually below each other.
    Cycle { a: String, b: String },
    DuplicateElement(String),
    UnknownElement(String),
    /// A pair of elements has no join or no meet.
    NotALattice { op: &'static str, a: String, b: String },
    NotDistributive { a: String, b: String, c: String },
    /// The map does not preserve the structure its adjoint requires.
    NoAdjoint { reason: String },
    NotMonotone { witness: String },
    LawViolation { law: &'static str, witness: String },
    NotSupercontinuous { witness: String },
    NotTwoSided,
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    /// A table has the wrong number of entries or an out-of-range value.
    BadTable { what: &'static str, expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cycle { a, b } => write!(f, "order cycle: {a} <= {b} <= {a}"),
            Error::DuplicateElement(e) => write!(f, "duplicate element `{e}`"),
            Error::UnknownElement(e) => write!(f, "unknown element `{e}`"),
            Error::NotALattice { op, a, b } => write!(f, "not a lattice: no {op} of {a} and {b}"),
            Error::NotDistributive { a, b, c } => {
                write!(f, "not distributive: {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")
            }
            Error::NoAdjoint { reason } => write!(f, "no adjoint: {reason}"),
            Error::NotMonotone { witness } => write!(f, "not monotone: {witness}"),
            Error::LawViolation { law, witness } => write!(f, "{law} fails: {witness}"),
            Error::NotSupercontinuous { witness } => {
                write!(f, "not supercontinuous: {witness} is not the join of the elements totally below it")
            }
            Error::NotTwoSided => write!(f, "quantale is not two-sided"),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "cap exceeded: {what} has size {size} (cap {cap})")
            }
            Error::BadTable { what, expected, found } => {
                write!(f, "bad {what} table: expected {expected} entries, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn law(law: &'static str, witness: String) -> Error {
    Error::LawViolation { law, witness }
}
