//! Valid lattice paths under the translation equivalence `v ~ v + l(r, s)`.
//!
//! A path of unit N- and E-steps is *valid* when every point it enters with
//! an E-step forces E-entry at all later points of the same class. This
//! crate checks validity, enumerates and counts valid paths from `(0,0)` to
//! `(nr, ns)`, and for `s = 2` implements the bijection that splits such a
//! path into `n` unrestricted single-block paths.

pub mod bijection;
pub mod cli;
pub mod count;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod validity;

pub use bijection::{compose, decompose, factorize, phi, phi_inverse, phi_propositions_check, Factorization, PhiImage};
pub use enumeration::{
    binomial, brute_force_valid_count, count_valid, count_valid_with_prefix, enumerate_valid, CountReport,
};
pub use error::{Error, Result};
pub use lattice::{ClassKey, DiagonalPoint, GridParams, LatticePath, Point, Step};
pub use validity::{find_violation, is_valid, is_valid_by_crossing, Violation};

/// Arbitrary-precision count type used by default.
pub type BigCount = num_bigint::BigUint;

/// Counts computed in machine words; overflow is reported as [`Error::Overflow`].
pub type SmallCount = u64;
