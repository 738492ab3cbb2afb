//! Exact combinatorics of long-cycle factorizations.
//!
//! The crate counts permutations `β` of `{1..N}` whose complement
//! `(1 2 … N)·β⁻¹` is a long cycle, and relates those counts to Stirling
//! numbers of the first kind through a bijection between black-partitioned
//! star maps and permuted star thorn trees.
//!
//! Layout:
//!
//! - [`permutation`], [`partition`], [`set_partition`]: the ground types.
//! - [`counting`]: closed forms, the triangular solver for `B(λ)`, and the
//!   Stirling identity checker.
//! - [`oracle`]: brute-force enumerators used as ground truth.
//! - [`structures`]: maps, star thorn trees, permuted trees, the thorn lift.
//! - [`bijection`]: the map-to-tree construction, its inverse, the auxiliary
//!   completion graph and the contraction used to count the image.
//! - [`symfun`]: dense symmetric polynomials in the monomial and power-sum
//!   bases, used to check the generating-series identities.
//! - [`report`]: pass/fail reports shared by the verification suites.

pub mod bijection;
pub mod counting;
pub mod dot;
mod error;
pub mod oracle;
pub mod partition;
pub mod permutation;
pub mod report;
pub mod set_partition;
pub mod structures;
pub mod symfun;

pub use error::{Error, Result};
pub use partition::Partition;
pub use permutation::Permutation;
pub use set_partition::SetPartition;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Reduced fraction of arbitrary-precision integers. Denominators are kept
/// positive and `gcd(|num|, den) = 1` by construction.
pub type ExactRational = BigRational;
