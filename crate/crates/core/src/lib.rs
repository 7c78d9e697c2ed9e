//! Exact computations for interval-firing on root systems.
//!
//! The crate builds irreducible root systems from their Cartan type, runs
//! symmetric and truncated interval-firing, counts lattice points of discrete
//! permutohedra and of polytope + zonotope Minkowski sums, and evaluates the
//! closed formulas for the resulting Ehrhart-like polynomials. Everything is
//! exact: integers in the fundamental-weight basis and rationals in the
//! simple-root basis.
//!
//! With the default `parallel` feature, enumerations fan out over rayon.
//! Building with `--no-default-features` gives the sequential code path.

pub mod appendix;
pub mod ehrhart;
pub mod error;
pub mod exactla;
pub mod firing;
pub mod json;
pub mod par;
pub mod permutohedra;
pub mod rootsys;

pub use error::{Error, Result};
pub use exactla::Rat;
pub use rootsys::{RootSystem, TypeLabel, Weight};

/// Resource guards shared by the enumerating operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the number of candidate independent sets.
    pub indep_sets: u128,
    /// Upper bound on the root-coordinate box scanned for a dominant downset.
    pub box_points: u128,
    /// Upper bound on fires during one stabilization.
    pub steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            indep_sets: 100_000_000,
            box_points: 10_000_000,
            steps: 10_000_000,
        }
    }
}
