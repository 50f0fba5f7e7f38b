//! Shadows of uniform set families and the local LYM inequality.

use crate::subset::{binomial, ElementSet};

/// `∂A`: every `(r-1)`-set obtained by dropping one element from a member of
/// `family`, sorted and deduplicated.
pub fn shadow(family: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = family
        .iter()
        .flat_map(|&a| a.iter().map(move |e| a.without(e)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `|∂A| / C(n, r-1) >= |A| / C(n, r)` for an `r`-uniform family on `[n]`,
/// compared exactly by cross-multiplication.
pub fn local_lym_holds(n: usize, r: usize, family: &[ElementSet]) -> bool {
    assert!(r >= 1, "shadow of 0-sets is undefined");
    let mut distinct = family.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let shadow_size = shadow(&distinct).len() as u128;
    let size = distinct.len() as u128;
    shadow_size * binomial(n as u64, r as u64) >= size * binomial(n as u64, r as u64 - 1)
}
