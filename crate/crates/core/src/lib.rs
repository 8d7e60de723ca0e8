//! Exact enumeration of the `mu` frame pattern on cycles.
//!
//! A pair `<i, j>` with `i < j` is a cycle-occurrence of `mu` in an n-cycle
//! when no value strictly between `i` and `j` is met while walking clockwise
//! from `i` to `j`. This crate counts those occurrences, contracts cycles
//! along their consecutive runs, relates minimal cycles to the charge
//! statistic, plots the non-matches as grid diagrams and computes the
//! resulting q-polynomial distributions by exhaustive enumeration.
//!
//! Module map:
//! - [`perm`] and [`cycle`]: canonical permutations and cycles with the
//!   definition-level occurrence machinery.
//! - [`contraction`]: consecutive runs, contraction, preimages and the two
//!   growth operators for incontractible cycles.
//! - [`charge`]: indices, charge and charge paths.
//! - [`poly`]: exact q-polynomials, sharded enumeration and closed-form
//!   cross-checks.
//! - [`nmplot`]: non-match grids, Ferrers shapes and the partition to cycle
//!   construction.
//! - [`verify`]: named checks with pass/fail reports.

pub mod charge;
pub mod contraction;
pub mod cycle;
mod error;
pub mod nmplot;
pub mod perm;
pub mod poly;
pub mod verify;

pub use charge::{charge, indices, ChargePath};
pub use contraction::{contract, is_incontractible, RunDecomposition};
pub use cycle::{make_cycle, Cycle, PairSet};
pub use error::{Error, Result};
pub use nmplot::{GridPlot, Partition};
pub use perm::{reduce, Permutation};
pub use poly::{QPolynomial, Statistic};
pub use verify::{CheckReport, CheckStatus};

/// `C(a, 2)`, zero for `a < 2`.
pub(crate) fn choose2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}
