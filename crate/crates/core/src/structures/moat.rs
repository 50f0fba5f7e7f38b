use std::collections::HashSet;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::johnson::{derive_seed, rng_from_seed};
use crate::matroid::{LineStructure, SparsePavingMatroid};
use crate::minors::contains_line_structure;
use crate::subset::{binomial, ElementSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoatKind {
    /// No non-basis inside.
    Empty,
    /// The non-bases inside embed into `L(H)`.
    Good,
    Other,
}

/// No non-basis meets `X` in exactly `r - 1` elements.
pub fn is_moat(m: &SparsePavingMatroid, x: ElementSet) -> bool {
    m.nonbases().iter().all(|&c| (c & x).len() + 1 != m.rank())
}

/// The non-bases contained in `X`.
pub fn interior(m: &SparsePavingMatroid, x: ElementSet) -> Vec<ElementSet> {
    m.nonbases()
        .iter()
        .copied()
        .filter(|c| c.is_subset(x))
        .collect()
}

/// `None` when `X` is not a moat. A rank mismatch with `H` leaves only empty
/// moats good.
pub fn classify_moat(
    m: &SparsePavingMatroid,
    x: ElementSet,
    h: &SparsePavingMatroid,
) -> Option<MoatKind> {
    if !is_moat(m, x) {
        return None;
    }
    let inside = interior(m, x);
    if inside.is_empty() {
        return Some(MoatKind::Empty);
    }
    let lines = LineStructure::from_sorted_unchecked(m.rank(), inside);
    let good = h.rank() == m.rank() && contains_line_structure(h.nonbases(), &lines).is_some();
    Some(if good {
        MoatKind::Good
    } else {
        MoatKind::Other
    })
}

pub fn is_good_moat(m: &SparsePavingMatroid, x: ElementSet, h: &SparsePavingMatroid) -> bool {
    matches!(
        classify_moat(m, x, h),
        Some(MoatKind::Empty | MoatKind::Good)
    )
}

/// `M` with the non-bases inside the moat `X` swapped for `replacement`.
pub fn replace_moat_interior(
    m: &SparsePavingMatroid,
    x: ElementSet,
    replacement: &[ElementSet],
) -> Result<SparsePavingMatroid> {
    if !is_moat(m, x) {
        return Err(Error::InvalidParameter(format!("{x} is not a moat")));
    }
    if let Some(&stray) = replacement.iter().find(|s| !s.is_subset(x)) {
        return Err(Error::InvalidParameter(format!(
            "{stray} is not inside {x}"
        )));
    }
    let outside = m.nonbases().iter().copied().filter(|c| !c.is_subset(x));
    SparsePavingMatroid::new(m.n(), m.rank(), outside.chain(replacement.iter().copied()))
}

/// Limits for [`find_disjoint_good_moats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoatSearchConfig {
    /// Candidate windows examined at most.
    pub max_windows: u64,
    /// Backtracking nodes when packing disjoint moats.
    pub max_nodes: u64,
    pub seed: u64,
}

impl Default for MoatSearchConfig {
    fn default() -> Self {
        MoatSearchConfig {
            max_windows: 100_000,
            max_nodes: 1_000_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoatSearch {
    /// Pairwise disjoint good moats, each checked by [`is_good_moat`].
    pub moats: Vec<ElementSet>,
    pub windows_examined: u64,
    /// A limit was hit before `want` moats were packed.
    pub budget_exhausted: bool,
}

/// Candidate windows: the intervals `{s, .., s+size-1}`, then every
/// `size`-subset when there are few enough, else seeded random subsets.
fn windows(n: usize, size: usize, config: &MoatSearchConfig) -> (Vec<ElementSet>, bool) {
    let mut out: Vec<ElementSet> = (0..=n - size)
        .map(|s| ElementSet::full(s + size) - ElementSet::full(s))
        .collect();
    let limit = config.max_windows as usize;
    let total = binomial(n as u64, size as u64);
    if total <= limit as u128 {
        out.extend(
            ElementSet::full(n)
                .subsets_of_size(size)
                .filter(|w| !is_interval(*w)),
        );
        return (out, false);
    }
    let mut rng = rng_from_seed(derive_seed(&[config.seed, n as u64, size as u64]));
    while out.len() < limit {
        out.push(
            sample(&mut rng, n, size)
                .iter()
                .map(|i| i as u32 + 1)
                .collect(),
        );
    }
    (out, true)
}

fn is_interval(w: ElementSet) -> bool {
    let lo = w.bits().trailing_zeros();
    (w.bits() >> lo) & ((w.bits() >> lo) + 1) == 0
}

/// Up to `want` pairwise disjoint `H`-good moats of `size` elements. The
/// search is sound but not complete beyond its limits.
pub fn find_disjoint_good_moats(
    m: &SparsePavingMatroid,
    h: &SparsePavingMatroid,
    size: usize,
    want: usize,
    config: &MoatSearchConfig,
) -> Result<MoatSearch> {
    if size < h.n() || size > m.n() {
        return Err(Error::InvalidParameter(format!(
            "moat size {size} must lie between n_H = {} and n = {}",
            h.n(),
            m.n()
        )));
    }
    let (candidates, sampled) = windows(m.n(), size, config);
    let mut seen = HashSet::new();
    let good: Vec<ElementSet> = candidates
        .iter()
        .copied()
        .filter(|&w| seen.insert(w) && is_good_moat(m, w, h))
        .collect();
    let mut best = Vec::new();
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    pack(
        &good,
        0,
        ElementSet::EMPTY,
        &mut chosen,
        &mut best,
        want,
        &mut nodes,
        config.max_nodes,
    );
    let budget_exhausted = best.len() < want && (sampled || nodes >= config.max_nodes);
    Ok(MoatSearch {
        moats: best,
        windows_examined: candidates.len() as u64,
        budget_exhausted,
    })
}

#[allow(clippy::too_many_arguments)]
fn pack(
    good: &[ElementSet],
    start: usize,
    used: ElementSet,
    chosen: &mut Vec<ElementSet>,
    best: &mut Vec<ElementSet>,
    want: usize,
    nodes: &mut u64,
    max_nodes: u64,
) {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    for i in start..good.len() {
        if best.len() >= want || *nodes >= max_nodes {
            return;
        }
        *nodes += 1;
        if good[i].is_disjoint(used) {
            chosen.push(good[i]);
            pack(
                good,
                i + 1,
                used | good[i],
                chosen,
                best,
                want,
                nodes,
                max_nodes,
            );
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::make_sparse_paving;
    use crate::minors::{single_line, uniform, whirl3};

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn moat_examples() {
        let m = make_sparse_paving(4, 2, [set(&[1, 2])]).unwrap();
        let h = single_line(2).unwrap();
        assert_eq!(classify_moat(&m, set(&[3, 4]), &h), Some(MoatKind::Empty));
        assert!(!is_moat(&m, set(&[1, 3])));
        assert_eq!(classify_moat(&m, set(&[1, 3]), &h), None);
        // {1,2} sits inside {1,2,3}; no non-basis meets it in one element
        assert_eq!(classify_moat(&m, set(&[1, 2, 3]), &h), Some(MoatKind::Good));
        let u = uniform(2, 4).unwrap();
        assert_eq!(
            classify_moat(&m, set(&[1, 2, 3]), &u),
            Some(MoatKind::Other)
        );
    }

    #[test]
    fn free_matroid_packs_intervals() {
        let m = uniform(3, 7).unwrap();
        let h = uniform(3, 3).unwrap();
        let found = find_disjoint_good_moats(&m, &h, 3, 5, &MoatSearchConfig::default()).unwrap();
        assert_eq!(found.moats, vec![set(&[1, 2, 3]), set(&[4, 5, 6])]);
        assert!(!found.budget_exhausted);
    }

    #[test]
    fn whirl_is_its_own_moat() {
        let w = whirl3();
        let found = find_disjoint_good_moats(&w, &w, 6, 1, &MoatSearchConfig::default()).unwrap();
        assert_eq!(found.moats, vec![w.ground()]);
    }

    #[test]
    fn replacement_keeps_stability() {
        let m = make_sparse_paving(6, 2, [set(&[5, 6])]).unwrap();
        let x = set(&[1, 2, 3, 4]);
        assert!(is_moat(&m, x));
        let swapped = replace_moat_interior(&m, x, &[set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert_eq!(swapped.nonbases().len(), 3);
        assert!(replace_moat_interior(&m, x, &[set(&[1, 5])]).is_err());
    }

    #[test]
    fn intervals() {
        assert!(is_interval(set(&[3, 4, 5])));
        assert!(!is_interval(set(&[3, 5])));
    }
}
