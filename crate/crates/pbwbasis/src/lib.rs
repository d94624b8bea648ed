//! Monomial bases for PBW-graded highest-weight modules in types `A_n` and
//! `C_n`, over the integers.
//!
//! The crate has three layers:
//!
//! * combinatorics — positive roots ([`rootsys`]), Dyck paths and their
//!   inequalities ([`dyck`]), and the lattice polytope whose integral points
//!   index the monomial basis ([`polytope`]);
//! * algebra — the divided-power symmetric algebra with exact big-integer
//!   coefficients ([`dpalg`]), the lowering operators acting on it
//!   ([`partials`]), and the straightening algorithm that rewrites an
//!   arbitrary divided-power monomial into the basis ([`straighten`]);
//! * ground truth — an independent representation-theoretic oracle
//!   ([`oracle`]): Weyl dimensions, Freudenthal multiplicities, and explicit
//!   highest-weight modules built by exact linear algebra, used to verify
//!   every combinatorial claim.
//!
//! The `pbwbasis` binary exposes all of it on the command line; see the
//! [`cli`] module and the project README.

use std::fmt;

pub mod cli;
pub mod dpalg;
pub mod dyck;
pub mod oracle;
pub mod partials;
pub mod polytope;
pub mod rootsys;
pub mod straighten;

pub use dpalg::DpPolynomial;
pub use dyck::DyckPath;
pub use polytope::{DominantWeight, GradedCharacter, MultiExponent};
pub use rootsys::{ColumnIndex, Family, PairKind, PositiveRoot, RootSystem};

/// Errors surfaced by the public API.  Most operations are total; the
/// fallible ones validate their inputs against the root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input (tokens, weights, CLI arguments).
    Parse(String),
    /// A root does not belong to the given root system.
    RootNotInSystem(String, Family, u32),
    /// A multi-exponent or weight vector has the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    /// A root sequence is not a valid Dyck path.
    InvalidPath(String),
    /// Operation restricted to one family was called on the other.
    WrongFamily(&'static str),
    /// A precondition on a straightening input failed.
    Precondition(String),
    /// Building an explicit module would exceed the dimension cap.
    CapExceeded { dim: num_bigint::BigUint, cap: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "{msg}"),
            Error::RootNotInSystem(tok, fam, n) => {
                write!(f, "root {tok} is not a positive root of {fam}_{n}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected a vector of length {expected}, got {got}")
            }
            Error::InvalidPath(msg) => write!(f, "not a valid Dyck path: {msg}"),
            Error::WrongFamily(op) => write!(f, "operation `{op}` is specific to the other family"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::CapExceeded { dim, cap } => {
                write!(f, "module dimension {dim} exceeds the cap {cap} (raise PBWBASIS_DIM_CAP)")
            }
        }
    }
}

impl std::error::Error for Error {}
