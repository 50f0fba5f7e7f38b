//! Sparse paving matroids realised as stable sets of Johnson graphs.
//!
//! The crate covers exhaustive enumeration and exact uniform sampling of small
//! sparse paving matroids, maximal extensions, minor containment with
//! witnesses, forts and moats, polychromatic subsets, extremal densities of
//! line structures, and the census tooling behind the `sparsepave` binary.
//!
//! Ground sets are `[n] = {1, ..., n}` with `n <= 64`; see [`ElementSet`].

pub mod census;
pub mod error;
pub mod extremal;
pub mod johnson;
pub mod matroid;
pub mod minors;
pub mod structures;
pub mod subset;

pub use error::{Error, Result};
pub use matroid::{
    make_sparse_paving, verify_matroid_axioms, GeneralMatroid, LineStructure, SparsePavingMatroid,
};
pub use subset::{binomial, ElementSet, MAX_ELEMENTS};
