//! Polychromatic subsets of hyperedge colourings.
//!
//! The search first follows the inductive construction: grow a set in which
//! any two intersecting `r`-sets get different colours, find a polychromatic
//! `(m-1)`-subset of it, then add one element whose new `r`-sets avoid the
//! colours already used. If that greedy walk gets stuck the search falls back
//! to backtracking, exhaustive for small ground sets.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::subset::ElementSet;

/// Exhaustive fallback search is used up to this many elements.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Node budget for the fallback search above [`EXHAUSTIVE_LIMIT`].
pub const FALLBACK_NODES: u64 = 1_000_000;

/// A colouring of the `r`-subsets of a domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    r: usize,
    domain: ElementSet,
    colors: HashMap<ElementSet, u64>,
}

impl Coloring {
    pub fn from_fn(domain: ElementSet, r: usize, mut color: impl FnMut(ElementSet) -> u64) -> Self {
        let colors = domain.subsets_of_size(r).map(|s| (s, color(s))).collect();
        Coloring { r, domain, colors }
    }

    /// Fails unless every `r`-subset of `domain` is coloured.
    pub fn from_map(
        domain: ElementSet,
        r: usize,
        colors: HashMap<ElementSet, u64>,
    ) -> Result<Self> {
        if let Some(missing) = domain.subsets_of_size(r).find(|s| !colors.contains_key(s)) {
            return Err(Error::InvalidParameter(format!("no colour for {missing}")));
        }
        Ok(Coloring { r, domain, colors })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn domain(&self) -> ElementSet {
        self.domain
    }

    pub fn color(&self, set: ElementSet) -> Option<u64> {
        self.colors.get(&set).copied()
    }

    fn at(&self, set: ElementSet) -> u64 {
        self.colors[&set]
    }

    /// Sets meeting in `r - 1` elements get different colours.
    pub fn is_valid(&self) -> bool {
        self.colors.iter().all(|(&a, &ca)| {
            let outside = self.domain - a;
            a.iter().all(|x| {
                outside
                    .iter()
                    .all(|y| self.colors[&a.without(x).with(y)] != ca)
            })
        })
    }

    /// All `r`-subsets of `set` carry distinct colours.
    pub fn is_polychromatic(&self, set: ElementSet) -> bool {
        let mut seen = HashSet::new();
        set.subsets_of_size(self.r).all(|s| seen.insert(self.at(s)))
    }
}

/// An `m`-subset of `within` whose `r`-subsets all get distinct colours.
///
/// Returns `Ok(None)` when none was found; any returned set has been checked.
pub fn polychromatic_subset(
    within: ElementSet,
    coloring: &Coloring,
    m: usize,
) -> Result<Option<ElementSet>> {
    if !within.is_subset(coloring.domain()) {
        return Err(Error::InvalidParameter(format!(
            "{within} is not inside the coloured domain {}",
            coloring.domain()
        )));
    }
    let sound = |s: &ElementSet| s.len() == m && coloring.is_polychromatic(*s);
    let found = construct(&within.to_vec(), coloring, coloring.r(), m)
        .filter(sound)
        .or_else(|| fallback(within, coloring, m).filter(sound));
    Ok(found)
}

fn first(pool: &[u32], m: usize) -> Option<ElementSet> {
    (pool.len() >= m).then(|| pool[..m].iter().copied().collect())
}

fn construct(pool: &[u32], c: &Coloring, r: usize, m: usize) -> Option<ElementSet> {
    if m <= r || r == 0 {
        return first(pool, m);
    }
    if r == 1 {
        let mut seen = HashSet::new();
        let picked: Vec<u32> = pool
            .iter()
            .copied()
            .filter(|&x| seen.insert(c.at(ElementSet::singleton(x))))
            .take(m)
            .collect();
        return first(&picked, m);
    }
    let spread = intersecting_distinct(pool, c, r);
    let base = construct(&spread, c, r, m - 1)?;
    let used: HashSet<u64> = base.subsets_of_size(r).map(|s| c.at(s)).collect();
    spread
        .iter()
        .copied()
        .filter(|&e| !base.contains(e))
        .find(|&e| {
            base.subsets_of_size(r - 1)
                .all(|s| !used.contains(&c.at(s.with(e))))
        })
        .map(|e| base.with(e))
}

/// Greedily keeps elements of `pool` while any two intersecting `r`-sets of
/// the kept elements stay differently coloured.
fn intersecting_distinct(pool: &[u32], c: &Coloring, r: usize) -> Vec<u32> {
    let mut kept = ElementSet::EMPTY;
    let mut by_color: HashMap<u64, Vec<ElementSet>> = HashMap::new();
    let mut order = Vec::new();
    for &x in pool {
        let fresh: Vec<(ElementSet, u64)> = kept
            .subsets_of_size(r - 1)
            .map(|s| {
                let set = s.with(x);
                (set, c.at(set))
            })
            .collect();
        let mut colors = HashSet::new();
        let ok = fresh.iter().all(|&(set, col)| {
            colors.insert(col)
                && by_color
                    .get(&col)
                    .is_none_or(|same| same.iter().all(|&o| o.is_disjoint(set)))
        });
        if ok {
            for (set, col) in fresh {
                by_color.entry(col).or_default().push(set);
            }
            kept = kept.with(x);
            order.push(x);
        }
    }
    order
}

fn fallback(within: ElementSet, c: &Coloring, m: usize) -> Option<ElementSet> {
    let pool = within.to_vec();
    let mut budget = if pool.len() <= EXHAUSTIVE_LIMIT {
        u64::MAX
    } else {
        FALLBACK_NODES
    };
    let mut used = HashSet::new();
    backtrack(ElementSet::EMPTY, &pool, 0, m, c, &mut used, &mut budget)
}

fn backtrack(
    chosen: ElementSet,
    pool: &[u32],
    start: usize,
    m: usize,
    c: &Coloring,
    used: &mut HashSet<u64>,
    budget: &mut u64,
) -> Option<ElementSet> {
    if chosen.len() == m {
        return Some(chosen);
    }
    let r = c.r();
    for i in start..pool.len() {
        if pool.len() - i < m - chosen.len() || *budget == 0 {
            return None;
        }
        *budget -= 1;
        let x = pool[i];
        let fresh: Vec<u64> = if chosen.len() + 1 >= r && r > 0 {
            chosen
                .subsets_of_size(r - 1)
                .map(|s| c.at(s.with(x)))
                .collect()
        } else {
            Vec::new()
        };
        let mut added = Vec::new();
        let mut ok = true;
        for col in fresh {
            if used.insert(col) {
                added.push(col);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(found) = backtrack(chosen.with(x), pool, i + 1, m, c, used, budget) {
                return Some(found);
            }
        }
        for col in added {
            used.remove(&col);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::rng_from_seed;
    use rand::Rng;

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn injective_colouring_gives_first_elements() {
        let dom = ElementSet::full(8);
        let c = Coloring::from_fn(dom, 2, |s| s.bits());
        assert!(c.is_valid());
        assert_eq!(
            polychromatic_subset(dom, &c, 5).unwrap(),
            Some(ElementSet::full(5))
        );
    }

    #[test]
    fn rank_one() {
        let dom = ElementSet::full(5);
        let c = Coloring::from_fn(dom, 1, |s| s.bits());
        assert_eq!(
            polychromatic_subset(dom, &c, 3).unwrap(),
            Some(set(&[1, 2, 3]))
        );
        // colours 1->a, 2->a, 3->b
        let c = Coloring::from_fn(set(&[1, 2, 3]), 1, |s| if s == set(&[3]) { 1 } else { 0 });
        assert_eq!(
            polychromatic_subset(set(&[1, 2, 3]), &c, 2).unwrap(),
            Some(set(&[1, 3]))
        );
    }

    #[test]
    fn m_equals_r() {
        let dom = ElementSet::full(4);
        let c = Coloring::from_fn(dom, 3, |_| 0);
        assert_eq!(
            polychromatic_subset(dom, &c, 3).unwrap(),
            Some(set(&[1, 2, 3]))
        );
        assert_eq!(polychromatic_subset(set(&[1, 2]), &c, 3).unwrap(), None);
    }

    #[test]
    fn sum_colouring_is_valid() {
        // colour by element sum mod a prime: sets meeting in r-1 elements
        // differ in one element, so their sums differ mod p when p > n
        let dom = ElementSet::full(12);
        let c = Coloring::from_fn(dom, 2, |s| s.iter().map(u64::from).sum::<u64>() % 13);
        assert!(c.is_valid());
        let x = polychromatic_subset(dom, &c, 4).unwrap().unwrap();
        assert!(c.is_polychromatic(x));
    }

    #[test]
    fn random_valid_colourings() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let dom = ElementSet::full(10);
            let p = 11 + rng.random_range(0..5u64) * 2;
            let shift: u64 = rng.random_range(0..1000);
            let c = Coloring::from_fn(dom, 2, |s| {
                (s.iter().map(|e| u64::from(e) * u64::from(e)).sum::<u64>() + shift) % p
            });
            if let Some(x) = polychromatic_subset(dom, &c, 4).unwrap() {
                assert!(c.is_polychromatic(x));
            }
        }
    }

    #[test]
    fn missing_colours_rejected() {
        let c = Coloring::from_map(ElementSet::full(3), 2, HashMap::new());
        assert!(c.is_err());
        let c = Coloring::from_fn(ElementSet::full(3), 2, |_| 0);
        assert!(polychromatic_subset(ElementSet::full(4), &c, 2).is_err());
    }
}
