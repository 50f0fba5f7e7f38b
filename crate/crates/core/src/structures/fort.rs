use std::collections::BTreeMap;

use super::poly::{polychromatic_subset, Coloring};
use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::subset::{binomial, ElementSet};

/// For each `(r-1)`-subset `A` of `X` that some non-basis `A ∪ {e}` with
/// `e ∉ X` completes, the smallest such `e`.
pub fn fort_pairings(m: &SparsePavingMatroid, x: ElementSet) -> BTreeMap<ElementSet, u32> {
    let mut pairs = BTreeMap::new();
    let r = m.rank();
    if r == 0 {
        return pairs;
    }
    for &c in m.nonbases() {
        let inside = c & x;
        if inside.len() + 1 == r {
            let e = (c - x).min_element().expect("one element outside");
            pairs
                .entry(inside)
                .and_modify(|p: &mut u32| *p = (*p).min(e))
                .or_insert(e);
        }
    }
    pairs
}

/// Every `(r-1)`-subset of `X` extends to a non-basis by an element outside
/// `X`.
pub fn is_fort(m: &SparsePavingMatroid, x: ElementSet) -> bool {
    let r = m.rank();
    if r == 0 || x.len() + 1 < r || !x.within(m.n()) {
        return false;
    }
    fort_pairings(m, x).len() as u128 == binomial(x.len() as u64, r as u64 - 1)
}

/// An `m`-subset `X'` of the fort `X` whose `(r-1)`-subsets pair with
/// pairwise distinct outside elements; each `(r-1)`-set is coloured by its
/// smallest pairing element.
pub fn fort_refine(
    m: &SparsePavingMatroid,
    x: ElementSet,
    size: usize,
) -> Result<Option<ElementSet>> {
    if !is_fort(m, x) {
        return Err(Error::NotAFort { set: x });
    }
    let pairs = fort_pairings(m, x);
    let coloring = Coloring::from_fn(x, m.rank() - 1, |a| u64::from(pairs[&a]));
    polychromatic_subset(x, &coloring, size)
}
