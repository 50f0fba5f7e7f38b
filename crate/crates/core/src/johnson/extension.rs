//! The size-then-lex order on stable sets and maximal extensions under it.

use std::cmp::Ordering;

use super::graph::{DenseJohnson, VertexMask};
use crate::error::{Error, Result};
use crate::subset::ElementSet;

/// Default vertex cap for exact maximal extensions.
pub const DEFAULT_EXTENSION_CAP: usize = 64;

/// Default node budget for the exact extension search.
pub const DEFAULT_EXTENSION_NODES: u64 = 50_000_000;

/// Total order on stable sets: larger sets rank higher; equal sizes compare
/// their ascending vertex lists element by element, larger bitmask winning.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StableSetOrdering;

impl StableSetOrdering {
    /// `a` and `b` must be sorted ascending.
    pub fn compare(&self, a: &[ElementSet], b: &[ElementSet]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    }
}

/// Exact-search limits for [`maximal_extension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionConfig {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig {
            max_vertices: DEFAULT_EXTENSION_CAP,
            max_nodes: DEFAULT_EXTENSION_NODES,
        }
    }
}

struct Search<'a> {
    graph: &'a DenseJohnson,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "extension search exceeded {} nodes",
                self.max_nodes
            )));
        }
        Ok(())
    }

    /// Largest stable subset size within `candidates`, at least `floor`.
    fn max_size(&mut self, chosen: usize, candidates: u128, best: &mut usize) -> Result<()> {
        self.tick()?;
        if candidates == 0 {
            *best = (*best).max(chosen);
            return Ok(());
        }
        if chosen + candidates.count_ones() as usize <= *best {
            return Ok(());
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1u128 << v);
        self.max_size(chosen + 1, rest & !self.graph.neighbors(v).0, best)?;
        self.max_size(chosen, rest, best)
    }

    /// Visits every stable subset of `candidates` of exactly `target` size.
    fn each_of_size(
        &mut self,
        chosen: u128,
        candidates: u128,
        target: usize,
        visit: &mut dyn FnMut(u128),
    ) -> Result<()> {
        self.tick()?;
        let have = chosen.count_ones() as usize;
        if have == target {
            visit(chosen);
            return Ok(());
        }
        if have + (candidates.count_ones() as usize) < target {
            return Ok(());
        }
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u128 << v;
        let rest = candidates & !bit;
        self.each_of_size(
            chosen | bit,
            rest & !self.graph.neighbors(v).0,
            target,
            visit,
        )?;
        self.each_of_size(chosen, rest, target, visit)
    }
}

fn extension_candidates(graph: &DenseJohnson, base: VertexMask) -> Result<u128> {
    if !graph.is_stable_mask(base) {
        return Err(Error::InvalidParameter("base set is not stable".into()));
    }
    Ok(graph.all().0 & !graph.closed_neighborhood(base).0)
}

/// `m'(I)`: the greatest stable superset of `I` under [`StableSetOrdering`].
pub fn maximal_extension_mask(
    graph: &DenseJohnson,
    base: VertexMask,
    config: &ExtensionConfig,
) -> Result<VertexMask> {
    if graph.vertex_count() > config.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "exact extension capped at {} vertices, J({},{}) has {}",
            config.max_vertices,
            graph.n(),
            graph.r(),
            graph.vertex_count()
        )));
    }
    let candidates = extension_candidates(graph, base)?;
    let mut search = Search {
        graph,
        nodes: 0,
        max_nodes: config.max_nodes,
    };
    let mut alpha = 0;
    search.max_size(0, candidates, &mut alpha)?;

    let order = StableSetOrdering;
    let mut best: Option<(Vec<ElementSet>, u128)> = None;
    search.each_of_size(0, candidates, alpha, &mut |extra| {
        let full = base.0 | extra;
        let list = graph.decode(VertexMask(full));
        let better = match &best {
            None => true,
            Some((b, _)) => order.compare(&list, b) == Ordering::Greater,
        };
        if better {
            best = Some((list, full));
        }
    })?;
    Ok(VertexMask(best.map_or(base.0, |(_, m)| m)))
}

/// `m'(I)` on sorted vertex lists; see [`maximal_extension_mask`].
pub fn maximal_extension(
    n: usize,
    r: usize,
    base: &[ElementSet],
    config: &ExtensionConfig,
) -> Result<Vec<ElementSet>> {
    let graph = DenseJohnson::new(n, r)?;
    let mask = graph.encode(base)?;
    Ok(graph.decode(maximal_extension_mask(&graph, mask, config)?))
}

/// Size of a largest stable superset of `base`.
pub fn maximum_extension_size(
    graph: &DenseJohnson,
    base: VertexMask,
    max_nodes: u64,
) -> Result<usize> {
    let candidates = extension_candidates(graph, base)?;
    let mut search = Search {
        graph,
        nodes: 0,
        max_nodes,
    };
    let mut alpha = 0;
    search.max_size(0, candidates, &mut alpha)?;
    Ok(base.len() + alpha)
}

/// A maximal (not necessarily maximum) stable superset built by adding
/// vertices in descending bitmask order. Its size is a lower bound on
/// `|m'(I)|`.
pub fn greedy_extension_mask(graph: &DenseJohnson, base: VertexMask) -> VertexMask {
    let mut chosen = base.0;
    let mut blocked = graph.closed_neighborhood(base).0;
    for v in (0..graph.vertex_count()).rev() {
        if blocked >> v & 1 == 0 {
            chosen |= 1u128 << v;
            blocked |= 1u128 << v | graph.neighbors(v).0;
        }
    }
    VertexMask(chosen)
}
