//! Extremal densities of line structures, element-disjoint copies, and
//! sampled abundance tables.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::johnson::{
    derive_seed, max_stable_bound, rng_from_seed, DenseJohnson, SparsePavingSampler, StableSets,
    VertexMask,
};
use crate::matroid::{LineStructure, SparsePavingMatroid};
use crate::minors::{contains_line_structure, contract, find_clean_copy_minor, for_each_embedding};
use crate::subset::{binomial, ElementSet, MAX_ELEMENTS};

/// Default node budget for [`ex_density`].
pub const DEFAULT_DENSITY_NODES: u64 = 20_000_000;

/// Default embedding/packing budget for [`count_disjoint_copies`].
pub const DEFAULT_COPY_NODES: u64 = 1_000_000;

/// Contraction pool size cap in [`abundance_trend`].
pub const CONTRACTION_POOL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityResult {
    pub n: usize,
    pub r: usize,
    pub best_count: usize,
    /// `best_count * n / C(n, r)`.
    pub density: Ratio<u128>,
    pub witness: SparsePavingMatroid,
    /// False when the node budget ran out before the search closed.
    pub exact: bool,
}

fn is_free(graph: &DenseJohnson, set: u128, l: &LineStructure) -> bool {
    contains_line_structure(&graph.decode(VertexMask(set)), l).is_none()
}

struct DensitySearch<'a> {
    graph: &'a DenseJohnson,
    l: &'a LineStructure,
    cap: usize,
    best: u128,
    nodes: u64,
    max_nodes: u64,
}

impl DensitySearch<'_> {
    fn run(&mut self, chosen: u128, candidates: u128) -> ControlFlow<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return ControlFlow::Break(());
        }
        let have = chosen.count_ones() as usize;
        if have > self.best.count_ones() as usize {
            self.best = chosen;
        }
        let bound = (have + candidates.count_ones() as usize).min(self.cap);
        if candidates == 0 || bound <= self.best.count_ones() as usize {
            return ControlFlow::Continue(());
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1u128 << v);
        let with = chosen | 1u128 << v;
        if is_free(self.graph, with, self.l) {
            self.run(with, rest & !self.graph.neighbors(v).0)?;
        }
        self.run(chosen, rest)
    }
}

/// Largest stable set of `J(n, r)` whose lines contain no copy of `L`, by
/// branch and bound against `⌊C(n,r)/(n+1-r)⌋`. Copies of `L` are closed
/// upwards, so a branch stops as soon as one appears.
pub fn ex_density(n: usize, r: usize, l: &LineStructure, max_nodes: u64) -> Result<DensityResult> {
    if l.rank() != r {
        return Err(Error::InvalidParameter(format!(
            "line structure has rank {}, expected {r}",
            l.rank()
        )));
    }
    if l.is_empty() {
        return Err(Error::InvalidParameter(
            "every matroid contains the empty line structure".into(),
        ));
    }
    let graph = DenseJohnson::new(n, r)?;
    let vertices = binomial(n as u64, r as u64);
    let cap = if vertices <= 1 {
        0
    } else {
        max_stable_bound(n as u64, r as u64).to_integer() as usize
    };
    let mut search = DensitySearch {
        graph: &graph,
        l,
        cap,
        best: 0,
        nodes: 0,
        max_nodes,
    };
    let exact = search.run(0, graph.all().0).is_continue();
    let best = graph.decode(VertexMask(search.best));
    let witness = SparsePavingMatroid::new(n, r, best.iter().copied())?;
    Ok(DensityResult {
        n,
        r,
        best_count: best.len(),
        density: Ratio::new(best.len() as u128 * n as u128, vertices),
        witness,
        exact,
    })
}

/// Full-enumeration counterpart of [`ex_density`]'s count, for checking.
pub fn ex_count_naive(n: usize, r: usize, l: &LineStructure) -> Result<usize> {
    let graph = DenseJohnson::new(n, r)?;
    let limit = if binomial(n as u64, r as u64) <= 1 {
        0
    } else {
        usize::MAX
    };
    Ok(StableSets::new(&graph, None)
        .filter(|s| s.len() <= limit && is_free(&graph, s.0, l))
        .map(|s| s.len())
        .max()
        .unwrap_or(0))
}

/// `L^k`: `k` copies of `L` on consecutive blocks of `n_L` fresh elements.
pub fn disjoint_copies(l: &LineStructure, k: usize) -> Result<LineStructure> {
    let base = l.compact();
    let width = base.support_size();
    if width * k > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge {
            n: width * k,
            max: MAX_ELEMENTS,
        });
    }
    let mut lines = Vec::with_capacity(base.len() * k);
    for i in 0..k {
        lines.extend_from_slice(base.shifted((i * width) as u32)?.lines());
    }
    LineStructure::new(l.rank(), lines)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCount {
    pub count: usize,
    /// False when a budget cut the search and `count` is only a lower bound.
    pub exact: bool,
}

/// Most pairwise element-disjoint copies of `L` among the `host` edges.
pub fn count_disjoint_copies(
    host: &[ElementSet],
    l: &LineStructure,
    max_nodes: u64,
) -> Result<CopyCount> {
    if l.is_empty() {
        return Err(Error::InvalidParameter(
            "copies of the empty line structure are unbounded".into(),
        ));
    }
    let mut supports = BTreeSet::new();
    let mut visited = 0u64;
    let mut exact = true;
    for_each_embedding(host, l, |e| {
        visited += 1;
        supports.insert(e.image());
        if visited >= max_nodes {
            exact = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let supports: Vec<ElementSet> = supports.into_iter().collect();
    let mut packing = Packing {
        supports: &supports,
        best: 0,
        nodes: 0,
        max_nodes,
    };
    if packing.run(0, ElementSet::EMPTY, 0).is_break() {
        exact = false;
    }
    Ok(CopyCount {
        count: packing.best,
        exact,
    })
}

struct Packing<'a> {
    supports: &'a [ElementSet],
    best: usize,
    nodes: u64,
    max_nodes: u64,
}

impl Packing<'_> {
    fn run(&mut self, start: usize, used: ElementSet, depth: usize) -> ControlFlow<()> {
        self.best = self.best.max(depth);
        for i in start..self.supports.len() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return ControlFlow::Break(());
            }
            if depth + (self.supports.len() - i) <= self.best {
                break;
            }
            if self.supports[i].is_disjoint(used) {
                self.run(i + 1, used | self.supports[i], depth + 1)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// One row of [`abundance_trend`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbundanceRow {
    pub n: usize,
    pub samples: u64,
    /// Matroids admitting a contraction with at least `m` disjoint copies.
    pub abundant: u64,
    /// Matroids with a clean copy of `H` as a minor.
    pub clean_copies: u64,
    /// Sampled matroids per rank, indexed by rank.
    pub ranks: Vec<u64>,
    /// Whether the draws were exactly uniform over `S_n`.
    pub exact_sampler: bool,
}

impl AbundanceRow {
    pub fn abundance(&self) -> Ratio<u64> {
        Ratio::new(self.abundant, self.samples.max(1))
    }

    pub fn clean_rate(&self) -> Ratio<u64> {
        Ratio::new(self.clean_copies, self.samples.max(1))
    }
}

/// Candidate contraction sets: every independent `k`-set when there are at
/// most [`CONTRACTION_POOL`] `k`-sets, else that many seeded random ones.
pub fn contraction_pool(m: &SparsePavingMatroid, k: usize, seed: u64) -> Vec<ElementSet> {
    let independent = |a: &ElementSet| a.len() < m.rank() || !m.is_nonbasis(*a);
    if binomial(m.n() as u64, k as u64) <= CONTRACTION_POOL as u128 {
        return m.ground().subsets_of_size(k).filter(independent).collect();
    }
    let mut rng = rng_from_seed(seed);
    let mut pool = BTreeSet::new();
    let mut tries = 0;
    while pool.len() < CONTRACTION_POOL && tries < 4 * CONTRACTION_POOL {
        tries += 1;
        let a: ElementSet = sample(&mut rng, m.n(), k)
            .iter()
            .map(|i| i as u32 + 1)
            .collect();
        if independent(&a) {
            pool.insert(a);
        }
    }
    pool.into_iter().collect()
}

/// Whether some pooled contraction `M/A`, `|A| = r - r_H`, holds `m` disjoint
/// copies of `L(H)`. An empty `L(H)` needs no copies.
pub fn is_abundant_in(
    m: &SparsePavingMatroid,
    h: &SparsePavingMatroid,
    copies: usize,
    seed: u64,
) -> bool {
    let target = h.line_structure();
    if target.is_empty() || copies == 0 {
        return true;
    }
    if m.rank() < h.rank() {
        return false;
    }
    contraction_pool(m, m.rank() - h.rank(), seed)
        .into_iter()
        .any(|a| {
            let q = contract(m, a).expect("pool holds independent sets");
            count_disjoint_copies(q.dependents(), target, DEFAULT_COPY_NODES)
                .map(|c| c.count >= copies)
                .unwrap_or(false)
        })
}

/// For each `n`, draws `samples` matroids from `S_n` (cell `i` seeded by
/// `(seed, n, i)`) and records how many are abundant in `H` and how many
/// carry a clean copy of `H`.
pub fn abundance_trend(
    h: &SparsePavingMatroid,
    n_values: &[usize],
    copies: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<AbundanceRow>> {
    n_values
        .iter()
        .map(|&n| {
            let sampler = SparsePavingSampler::new(n)?;
            let cells: Vec<(usize, bool, bool)> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let cell = derive_seed(&[seed, n as u64, i]);
                    let draw = sampler.sample(&mut rng_from_seed(cell));
                    let m = draw.matroid;
                    let abundant = is_abundant_in(&m, h, copies, derive_seed(&[cell, 1]));
                    let clean = find_clean_copy_minor(&m, h).is_some();
                    (m.rank(), abundant, clean)
                })
                .collect();
            let mut ranks = vec![0u64; n + 1];
            for &(r, _, _) in &cells {
                ranks[r] += 1;
            }
            Ok(AbundanceRow {
                n,
                samples,
                abundant: cells.iter().filter(|c| c.1).count() as u64,
                clean_copies: cells.iter().filter(|c| c.2).count() as u64,
                ranks,
                exact_sampler: sampler.is_exact(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::is_stable;
    use crate::minors::{disjoint_lines, single_line, uniform, whirl3};

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn line(r: usize) -> LineStructure {
        LineStructure::new(r, [ElementSet::full(r)]).unwrap()
    }

    #[test]
    fn single_line_density_is_zero() {
        for n in 2..=7 {
            for r in 1..n {
                let d = ex_density(n, r, &line(r), DEFAULT_DENSITY_NODES).unwrap();
                assert_eq!(d.best_count, 0);
                assert!(d.exact);
            }
        }
    }

    #[test]
    fn two_disjoint_lines_in_j42() {
        let l2 = disjoint_copies(&line(2), 2).unwrap();
        let d = ex_density(4, 2, &l2, DEFAULT_DENSITY_NODES).unwrap();
        assert_eq!(d.best_count, 1);
        assert_eq!(d.density, Ratio::new(2, 3));
        assert_eq!(ex_count_naive(4, 2, &l2).unwrap(), 1);
        assert!(is_stable(d.witness.nonbases()));
    }

    #[test]
    fn branch_and_bound_matches_naive() {
        let corpus = [
            disjoint_copies(&line(2), 2).unwrap(),
            disjoint_copies(&line(3), 2).unwrap(),
            whirl3().line_structure().clone(),
        ];
        for l in &corpus {
            for n in l.support_size().max(l.rank() + 1)..=6 {
                let fast = ex_density(n, l.rank(), l, DEFAULT_DENSITY_NODES).unwrap();
                assert!(fast.exact);
                assert_eq!(
                    fast.best_count,
                    ex_count_naive(n, l.rank(), l).unwrap(),
                    "n={n}"
                );
                assert!(contains_line_structure(fast.witness.nonbases(), l).is_none());
            }
        }
    }

    #[test]
    fn copies() {
        let w = whirl3().line_structure().clone();
        assert_eq!(disjoint_copies(&w, 1).unwrap(), w);
        let three = disjoint_copies(&line(3), 3).unwrap();
        assert_eq!(&three, disjoint_lines(3, 3).unwrap().line_structure());
        assert_eq!(disjoint_copies(&w, 4).unwrap().support_size(), 24);
    }

    #[test]
    fn counting_copies() {
        let l = line(3);
        let host = disjoint_copies(&l, 4).unwrap();
        assert_eq!(
            count_disjoint_copies(host.lines(), &l, DEFAULT_COPY_NODES)
                .unwrap()
                .count,
            4
        );
        assert_eq!(
            count_disjoint_copies(&[], &l, DEFAULT_COPY_NODES)
                .unwrap()
                .count,
            0
        );
        let w = whirl3();
        assert_eq!(
            count_disjoint_copies(w.nonbases(), &l, DEFAULT_COPY_NODES)
                .unwrap()
                .count,
            1
        );
        assert!(count_disjoint_copies(&[set(&[1, 2, 3])], &LineStructure::empty(3), 10).is_err());
    }

    #[test]
    fn trend_is_deterministic() {
        let h = single_line(2).unwrap();
        let a = abundance_trend(&h, &[5, 6], 1, 40, 9).unwrap();
        let b = abundance_trend(&h, &[5, 6], 1, 40, 9).unwrap();
        assert_eq!(a, b);
        let u = abundance_trend(&uniform(2, 4).unwrap(), &[5], 1, 20, 9).unwrap();
        assert_eq!(u[0].abundant, 20);
    }
}
