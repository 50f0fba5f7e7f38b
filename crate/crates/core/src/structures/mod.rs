//! Loose elements, forts, moats and polychromatic subsets.

pub mod fort;
pub mod loose;
pub mod moat;
pub mod poly;

pub use fort::{fort_pairings, fort_refine, is_fort};
pub use loose::{loose_elements, tied_nonbases};
pub use moat::{
    classify_moat, find_disjoint_good_moats, interior, is_good_moat, is_moat,
    replace_moat_interior, MoatKind, MoatSearch, MoatSearchConfig,
};
pub use poly::{polychromatic_subset, Coloring};
