//! Exact verification of the chain of identities linking Gordon's
//! generalization of the Rogers-Ramanujan identities, conjugacy-class
//! statistics of `GL(n, q)`, and principal specializations of
//! Hall-Littlewood polynomials.
//!
//! Everything is exact: series coefficients and probabilities are
//! arbitrary-precision rationals, and infinite products are either
//! reduced to finite certificates or bracketed by rational intervals.
//!
//! Module map:
//! - [`partitions`]: partitions and their statistics.
//! - [`qseries`]: truncated power series, both sides of Gordon's identity.
//! - [`ffpoly`]: polynomials over prime fields, irreducible counts, the
//!   product identity over all monic irreducibles.
//! - [`fqlinalg`]: matrices over prime fields and the partition data of
//!   their rational canonical form.
//! - [`glnq`]: group orders, centralizers, class enumeration, cycle-index
//!   probabilities, limits and exhaustive censuses.
//! - [`hall_littlewood`]: Hall-Littlewood polynomials and their
//!   specializations.

pub mod error;
pub mod ffpoly;
pub mod fqlinalg;
pub mod glnq;
pub mod hall_littlewood;
pub mod partitions;
pub mod qseries;
pub mod rational;

pub use error::{Error, Result};
pub use ffpoly::FqPoly;
pub use fqlinalg::{ClassData, MatFq};
pub use glnq::{AbstractClassData, Interval};
pub use hall_littlewood::HLPolynomial;
pub use partitions::Partition;
pub use qseries::TruncatedSeries;
pub use rational::Rational;
