//! Johnson graph combinatorics: stable sets of `J(n, r)` are exactly the
//! non-basis families of rank-`r` sparse paving matroids on `[n]`.

pub mod bounds;
pub mod enumerate;
pub mod extension;
pub mod graph;
pub mod sample;
pub mod shadow;

pub use bounds::{
    byskov_bound, exceeds_graham_sloane, max_stable_bound, maximal_stable_set_sizes,
    steiner_triple_system_7,
};
pub use enumerate::{
    count_sparse_paving, count_sparse_paving_rank, enumerate_stable_sets, SparsePavingCounts,
    StableSetCounter, StableSets,
};
pub use extension::{
    greedy_extension_mask, maximal_extension, maximal_extension_mask, maximum_extension_size,
    ExtensionConfig, StableSetOrdering,
};
pub use graph::{adjacent, is_stable, DenseJohnson, JohnsonGraph, VertexMask, MAX_DENSE_VERTICES};
pub use sample::{
    derive_seed, rng_from_seed, sample_stable_uniform, GlauberConfig, MatroidSample, RankSampler,
    SparsePavingSampler, StableSample, StableSetSampler,
};
pub use shadow::{local_lym_holds, shadow};
