//! Perfect matchings, forcing numbers and anti-forcing numbers of polyomino
//! graphs.
//!
//! Every quantity is reachable by at least two independent routes:
//! exhaustive enumeration over perfect matchings (with definitional oracles
//! for the per-matching numbers) and the closed recurrences / explicit sums
//! for the `G_n` and `H_n` family. The [`verify`] module cross-checks them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod antiforcing;
mod bitset;
mod clique;
mod error;
pub mod forcing;
pub mod formulas;
pub mod lattice;
pub mod matching;
pub mod poly;
pub mod surd;
pub mod verify;

pub use bitset::EdgeSet;
pub use error::{Error, Result};
pub use lattice::{
    build_g, build_h, family_cells, from_cells, validate, Face, FaceName, GraphKind,
    LatticeVertex, PolyominoGraph, VertexLabel, Violation,
};
pub use matching::{AlternatingCycle, Matching};
pub use poly::IntPolynomial;
pub use surd::SurdNumber;

/// Bounds on the exhaustive searches.
///
/// The definitional oracles and the alternating-cycle enumerator are
/// exponential; they refuse inputs above these sizes instead of running
/// for hours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum edge count for exhaustive alternating-cycle search.
    pub cycle_edges: usize,
    /// Maximum `|M|` for the forcing-number oracle.
    pub forcing_oracle: usize,
    /// Maximum `|E \ M|` for the anti-forcing oracle.
    pub antiforcing_oracle: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cycle_edges: 40,
            forcing_oracle: 13,
            antiforcing_oracle: 20,
        }
    }
}
