//! Contractions, restrictions, line-structure embeddings and minor search.
//!
//! A contraction of a sparse paving matroid by an independent set is paving,
//! so it is carried as a [`PavingQuotient`]: a rank and its dependent sets of
//! that size. Deletion is realised by restricting to a subset.

pub mod embed;
pub mod families;
pub mod quotient;
pub mod search;

pub use embed::{contains_line_structure, for_each_embedding, Embedding};
pub use families::{common_core_lines, disjoint_lines, lift, single_line, uniform, whirl3};
pub use quotient::{contract, restrict, PavingQuotient};
pub use search::{
    clean_copy_minor, find_clean_copy_minor, find_uniform_minor, has_minor, has_minor_with_budget,
    has_uniform_minor, verify_minor_witness, CleanCopy, MinorWitness, UniformMinorWitness,
    DEFAULT_MINOR_BUDGET,
};
