use std::collections::BTreeMap;

use crate::matroid::SparsePavingMatroid;
use crate::subset::ElementSet;

/// For each non-basis, the elements that lie in no other non-basis.
pub fn loose_elements(m: &SparsePavingMatroid) -> BTreeMap<ElementSet, ElementSet> {
    let mut once = ElementSet::EMPTY;
    let mut twice = ElementSet::EMPTY;
    for &c in m.nonbases() {
        twice = twice | (once & c);
        once = once | c;
    }
    m.nonbases().iter().map(|&c| (c, c - twice)).collect()
}

/// Non-bases without loose elements, in bitmask order.
pub fn tied_nonbases(m: &SparsePavingMatroid) -> Vec<ElementSet> {
    loose_elements(m)
        .into_iter()
        .filter(|(_, loose)| loose.is_empty())
        .map(|(c, _)| c)
        .collect()
}
