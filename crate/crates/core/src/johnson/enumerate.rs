//! Exhaustive enumeration and exact counting of stable sets in `J(n, r)`.
//!
//! Both walk the same binary tree: take the lowest undecided vertex, branch on
//! including it (which knocks out its neighbours) before excluding it. A leaf is
//! reached when no candidates remain. The counter memoises subtree sizes by the
//! remaining candidate mask, which lets it rank and unrank leaves in exactly
//! the enumeration order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::graph::{DenseJohnson, VertexMask};
use crate::error::{Error, Result};
use crate::subset::ElementSet;

/// Default cap on distinct memo entries kept by [`StableSetCounter`].
pub const DEFAULT_MEMO_LIMIT: usize = 1 << 22;

struct Frame {
    chosen: u128,
    candidates: u128,
}

/// Depth-first stream of every stable set of a [`DenseJohnson`], as vertex
/// masks, in include-then-exclude order.
pub struct StableSets {
    adjacency: Vec<u128>,
    cap: Option<usize>,
    stack: Vec<Frame>,
}

impl StableSets {
    pub fn new(graph: &DenseJohnson, size_cap: Option<usize>) -> Self {
        StableSets {
            adjacency: graph.adjacency().to_vec(),
            cap: size_cap,
            stack: vec![Frame {
                chosen: 0,
                candidates: graph.all().0,
            }],
        }
    }
}

impl Iterator for StableSets {
    type Item = VertexMask;

    fn next(&mut self) -> Option<VertexMask> {
        while let Some(Frame { chosen, candidates }) = self.stack.pop() {
            if candidates == 0 {
                return Some(VertexMask(chosen));
            }
            let v = candidates.trailing_zeros() as usize;
            let bit = 1u128 << v;
            let rest = candidates & !bit;
            self.stack.push(Frame {
                chosen,
                candidates: rest,
            });
            let full = self.cap.is_some_and(|c| chosen.count_ones() as usize >= c);
            if !full {
                self.stack.push(Frame {
                    chosen: chosen | bit,
                    candidates: rest & !self.adjacency[v],
                });
            }
        }
        None
    }
}

/// Every stable set of `J(n, r)` (at most `size_cap` vertices when given),
/// each as a sorted list of `r`-sets.
pub fn enumerate_stable_sets(
    n: usize,
    r: usize,
    size_cap: Option<usize>,
) -> Result<impl Iterator<Item = Vec<ElementSet>>> {
    let graph = DenseJohnson::new(n, r)?;
    let stream = StableSets::new(&graph, size_cap);
    Ok(stream.map(move |m| graph.decode(m)))
}

/// Memoised count of the stable sets below each candidate mask.
pub struct StableSetCounter {
    adjacency: Vec<u128>,
    memo: HashMap<u128, u128>,
    memo_limit: usize,
    total: u128,
}

impl StableSetCounter {
    pub fn new(graph: &DenseJohnson) -> Result<Self> {
        Self::with_memo_limit(graph, DEFAULT_MEMO_LIMIT)
    }

    pub fn with_memo_limit(graph: &DenseJohnson, memo_limit: usize) -> Result<Self> {
        let mut counter = StableSetCounter {
            adjacency: graph.adjacency().to_vec(),
            memo: HashMap::new(),
            memo_limit,
            total: 0,
        };
        counter.total = counter.count(graph.all().0)?;
        Ok(counter)
    }

    /// Number of stable sets of the whole graph (the empty set included).
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn memo_entries(&self) -> usize {
        self.memo.len()
    }

    fn count(&mut self, candidates: u128) -> Result<u128> {
        if candidates == 0 {
            return Ok(1);
        }
        if let Some(&c) = self.memo.get(&candidates) {
            return Ok(c);
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1u128 << v);
        let with = self.count(rest & !self.adjacency[v])?;
        let without = self.count(rest)?;
        let total = with + without;
        if self.memo.len() >= self.memo_limit {
            return Err(Error::BudgetExceeded(format!(
                "stable-set memo exceeded {} entries",
                self.memo_limit
            )));
        }
        self.memo.insert(candidates, total);
        Ok(total)
    }

    fn lookup(&self, candidates: u128) -> u128 {
        if candidates == 0 {
            1
        } else {
            self.memo[&candidates]
        }
    }

    /// The `index`-th stable set in enumeration order.
    pub fn unrank(&self, mut index: u128) -> Result<VertexMask> {
        if index >= self.total {
            return Err(Error::InvalidParameter(format!(
                "index {index} out of range for {} stable sets",
                self.total
            )));
        }
        let mut chosen = 0u128;
        let mut cand = VertexMask::full(self.adjacency.len()).0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let rest = cand & !(1u128 << v);
            let inc = rest & !self.adjacency[v];
            let with = self.lookup(inc);
            if index < with {
                chosen |= 1u128 << v;
                cand = inc;
            } else {
                index -= with;
                cand = rest;
            }
        }
        Ok(VertexMask(chosen))
    }

    /// Position of a stable set in enumeration order.
    pub fn rank(&self, set: VertexMask) -> u128 {
        let mut index = 0u128;
        let mut cand = VertexMask::full(self.adjacency.len()).0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let rest = cand & !(1u128 << v);
            let inc = rest & !self.adjacency[v];
            if set.contains(v) {
                cand = inc;
            } else {
                index += self.lookup(inc);
                cand = rest;
            }
        }
        index
    }
}

/// `s_{n,r}` for every rank, and `s_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsePavingCounts {
    pub n: usize,
    pub by_rank: Vec<u128>,
    pub total: u128,
}

/// Number of sparse paving matroids of rank `r` on `[n]`: stable sets of
/// `J(n, r)` that leave a basis. For `r ∈ {0, n}` only the empty family does.
pub fn count_sparse_paving_rank(n: usize, r: usize) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    if r == 0 || r == n {
        return Ok(1);
    }
    let graph = DenseJohnson::new(n, r)?;
    Ok(StableSetCounter::new(&graph)?.total())
}

pub fn count_sparse_paving(n: usize) -> Result<SparsePavingCounts> {
    let by_rank = (0..=n)
        .map(|r| count_sparse_paving_rank(n, r))
        .collect::<Result<Vec<_>>>()?;
    let total = by_rank.iter().sum();
    Ok(SparsePavingCounts { n, by_rank, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power-set filter: every vertex subset, kept when stable.
    fn naive_count(n: usize, r: usize) -> u128 {
        let g = DenseJohnson::new(n, r).unwrap();
        let count = g.vertex_count();
        assert!(count <= 20);
        (0u128..1 << count)
            .filter(|&m| g.is_stable_mask(VertexMask(m)))
            .count() as u128
    }

    #[test]
    fn octahedron_has_ten_stable_sets() {
        assert_eq!(naive_count(4, 2), 10);
        assert_eq!(enumerate_stable_sets(4, 2, None).unwrap().count(), 10);
    }

    #[test]
    fn small_cases() {
        for n in 0..=6 {
            assert_eq!(enumerate_stable_sets(n, 0, None).unwrap().count(), 2);
        }
        // K_5: empty set plus five singletons
        assert_eq!(naive_count(5, 1), 6);
        assert_eq!(enumerate_stable_sets(5, 1, None).unwrap().count(), 6);
    }

    #[test]
    fn enumerator_matches_power_set_and_counter() {
        for n in 0..=6 {
            for r in 0..=n {
                let g = DenseJohnson::new(n, r).unwrap();
                let streamed: Vec<_> = StableSets::new(&g, None).collect();
                let counter = StableSetCounter::new(&g).unwrap();
                assert_eq!(streamed.len() as u128, counter.total(), "J({n},{r})");
                if g.vertex_count() <= 15 {
                    assert_eq!(streamed.len() as u128, naive_count(n, r));
                }
                for (i, &m) in streamed.iter().enumerate() {
                    assert!(g.is_stable_mask(m));
                    assert_eq!(counter.unrank(i as u128).unwrap(), m);
                    assert_eq!(counter.rank(m), i as u128);
                }
            }
        }
    }

    #[test]
    fn size_cap_filters() {
        let g = DenseJohnson::new(5, 2).unwrap();
        let all: Vec<_> = StableSets::new(&g, None).collect();
        let capped: Vec<_> = StableSets::new(&g, Some(1)).collect();
        assert_eq!(capped.len(), 11);
        let expected: Vec<_> = all.iter().copied().filter(|m| m.len() <= 1).collect();
        assert_eq!(capped, expected);
    }

    #[test]
    fn include_first_order() {
        let sets: Vec<_> = enumerate_stable_sets(4, 2, None).unwrap().collect();
        // vertex {1,2} (lowest mask) is taken first, paired with its complement
        assert_eq!(sets[0].len(), 2);
        assert_eq!(sets.last().unwrap().len(), 0);
    }

    #[test]
    fn counts_n4() {
        let c = count_sparse_paving(4).unwrap();
        assert_eq!(c.by_rank, vec![1, 5, 10, 5, 1]);
        assert_eq!(c.total, 22);
        let c1 = count_sparse_paving(1).unwrap();
        assert_eq!(c1.by_rank, vec![1, 1]);
    }

    #[test]
    fn unrank_out_of_range() {
        let g = DenseJohnson::new(4, 2).unwrap();
        let c = StableSetCounter::new(&g).unwrap();
        assert!(c.unrank(10).is_err());
    }

    #[test]
    fn memo_limit_reports_budget() {
        let g = DenseJohnson::new(7, 3).unwrap();
        assert!(matches!(
            StableSetCounter::with_memo_limit(&g, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
