//! Distributions of simple marked mesh patterns in permutations.
//!
//! The library computes, over several permutation classes, the
//! polynomial whose coefficient of `x^k` counts members with exactly `k`
//! positions matching a quadrant pattern. Three independent routes are
//! provided and cross-checked: a brute-force enumeration oracle with
//! exact big-integer tallies, scalar recursions with their closed-form
//! products (including q-analogues refined by coinversions), and
//! multivariate insertion engines that track which positions carry which
//! marking. A verification layer runs the whole collection of identities
//! and reports structured results.

pub mod egf;
pub mod error;
pub mod multivar;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod recursions;
pub mod series;
pub mod verify;

pub use egf::EgfSeries;
pub use error::{Error, Result};
pub use oracle::{BlockPattern, Oracle, Pattern, PermClass};
pub use perm::{Bound, Permutation, QuadSpec, Stats};
pub use poly::{BiPoly, IntPoly};
pub use series::SeriesId;
pub use verify::{CheckResult, Status, Suite, SuiteReport};
