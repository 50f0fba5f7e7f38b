use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::subset::{binomial, ElementSet, MAX_ELEMENTS};

/// Largest vertex count handled by the dense (bitmask) representation.
pub const MAX_DENSE_VERTICES: usize = 128;

/// `J(n, r)`: the `r`-subsets of `[n]`, adjacent iff they share `r - 1`
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JohnsonGraph {
    n: usize,
    r: usize,
}

impl JohnsonGraph {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        if r > n {
            return Err(Error::RankTooLarge { n, rank: r });
        }
        Ok(JohnsonGraph { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `N = C(n, r)`.
    pub fn vertex_count(&self) -> u128 {
        binomial(self.n as u64, self.r as u64)
    }

    pub fn is_vertex(&self, v: ElementSet) -> bool {
        v.len() == self.r && v.within(self.n)
    }

    pub fn adjacent(&self, u: ElementSet, v: ElementSet) -> Result<bool> {
        if !self.is_vertex(u) || !self.is_vertex(v) {
            return Err(Error::MismatchedAmbient {
                first: u,
                second: v,
            });
        }
        Ok(u.meet(v) + 1 == self.r)
    }

    /// Neighbours of `v`: swap one element of `v` for one outside it.
    pub fn neighbors(&self, v: ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
        let outside = ElementSet::full(self.n) - v;
        v.iter()
            .flat_map(move |a| outside.iter().map(move |b| v.without(a).with(b)))
    }

    /// True iff no two of `vertices` are adjacent.
    pub fn is_stable(&self, vertices: &[ElementSet]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u.meet(v) + 1 != self.r || u == v)
        })
    }
}

/// Johnson adjacency on bare sets: equal size `r` and `|u ∩ v| = r - 1`.
pub fn adjacent(u: ElementSet, v: ElementSet) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::MismatchedAmbient {
            first: u,
            second: v,
        });
    }
    Ok(u.meet(v) + 1 == u.len())
}

/// True iff no two members are Johnson-adjacent. Members must share one size.
pub fn is_stable(vertices: &[ElementSet]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| {
        vertices[i + 1..]
            .iter()
            .all(|&v| u.len() == v.len() && u.meet(v) + 1 != u.len())
    })
}

/// A set of vertices of a [`DenseJohnson`], one bit per vertex index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMask(pub u128);

impl VertexMask {
    pub const EMPTY: VertexMask = VertexMask(0);

    pub fn full(count: usize) -> Self {
        if count >= 128 {
            VertexMask(u128::MAX)
        } else {
            VertexMask((1u128 << count) - 1)
        }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// `J(n, r)` with its vertices materialised in bitmask order and adjacency
/// stored as one [`VertexMask`] per vertex. Requires `C(n, r) <= 128`.
#[derive(Clone, Debug)]
pub struct DenseJohnson {
    graph: JohnsonGraph,
    vertices: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    adjacency: Vec<u128>,
}

impl DenseJohnson {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        Self::with_cap(n, r, MAX_DENSE_VERTICES)
    }

    /// Like [`DenseJohnson::new`] with a tighter vertex cap.
    pub fn with_cap(n: usize, r: usize, cap: usize) -> Result<Self> {
        let graph = JohnsonGraph::new(n, r)?;
        let count = graph.vertex_count();
        let cap = cap.min(MAX_DENSE_VERTICES);
        if count > cap as u128 {
            return Err(Error::BudgetExceeded(format!(
                "J({n},{r}) has {count} vertices, dense cap is {cap}"
            )));
        }
        let vertices: Vec<ElementSet> = ElementSet::full(n).subsets_of_size(r).collect();
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adjacency = vertices
            .iter()
            .map(|&u| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| u.meet(v) + 1 == r)
                    .fold(0u128, |acc, (j, _)| acc | 1u128 << j)
            })
            .collect();
        Ok(DenseJohnson {
            graph,
            vertices,
            index,
            adjacency,
        })
    }

    pub fn graph(&self) -> JohnsonGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn r(&self) -> usize {
        self.graph.r
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[ElementSet] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> ElementSet {
        self.vertices[i]
    }

    pub fn index_of(&self, v: ElementSet) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn neighbors(&self, i: usize) -> VertexMask {
        VertexMask(self.adjacency[i])
    }

    pub(crate) fn adjacency(&self) -> &[u128] {
        &self.adjacency
    }

    pub fn all(&self) -> VertexMask {
        VertexMask::full(self.vertices.len())
    }

    /// Union of the closed neighbourhoods of `set`.
    pub fn closed_neighborhood(&self, set: VertexMask) -> VertexMask {
        VertexMask(set.indices().fold(set.0, |acc, i| acc | self.adjacency[i]))
    }

    pub fn is_stable_mask(&self, set: VertexMask) -> bool {
        set.indices().all(|i| self.adjacency[i] & set.0 == 0)
    }

    /// A stable set is maximal when every vertex is in it or next to it.
    pub fn is_maximal_stable(&self, set: VertexMask) -> bool {
        self.is_stable_mask(set) && self.closed_neighborhood(set) == self.all()
    }

    pub fn decode(&self, set: VertexMask) -> Vec<ElementSet> {
        set.indices().map(|i| self.vertices[i]).collect()
    }

    pub fn encode(&self, vertices: &[ElementSet]) -> Result<VertexMask> {
        vertices.iter().try_fold(VertexMask::EMPTY, |acc, &v| {
            let i = self.index_of(v).ok_or(Error::BadCardinality {
                set: v,
                expected: self.r(),
                found: v.len(),
            })?;
            Ok(VertexMask(acc.0 | 1u128 << i))
        })
    }
}
