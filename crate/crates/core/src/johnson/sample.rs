//! Uniform sampling of stable sets and of sparse paving matroids.
//!
//! Inside the dense range the sampler is exact: it draws a uniform index and
//! unranks it through [`StableSetCounter`], which is the same as picking an
//! entry of the full enumeration. Outside it falls back to single-site Glauber
//! dynamics for the hard-core model at fugacity 1 and marks the draw as
//! approximate.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::StableSetCounter;
use super::graph::{DenseJohnson, JohnsonGraph, MAX_DENSE_VERTICES};
use crate::error::{Error, Result};
use crate::matroid::{LineStructure, SparsePavingMatroid};
use crate::subset::ElementSet;

/// A sampled stable set, flagged exact (uniform) or approximate (Glauber).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSample {
    pub vertices: Vec<ElementSet>,
    pub exact: bool,
}

/// Glauber dynamics settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlauberConfig {
    /// Steps per vertex of `J(n, r)`; total burn-in is this times `C(n, r)`.
    pub steps_per_vertex: u64,
    /// Upper bound on total steps regardless of graph size.
    pub max_steps: u64,
}

impl Default for GlauberConfig {
    fn default() -> Self {
        GlauberConfig {
            steps_per_vertex: 100,
            max_steps: 1 << 32,
        }
    }
}

/// Deterministic RNG for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes several words into one seed (splitmix64 finaliser), so per-cell
/// streams depend only on their coordinates.
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        h ^= p;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}

fn random_vertex<R: Rng + ?Sized>(graph: &JohnsonGraph, rng: &mut R) -> ElementSet {
    index::sample(rng, graph.n(), graph.r())
        .iter()
        .map(|i| i as u32 + 1)
        .collect()
}

/// Runs `steps` heat-bath updates from the empty set: pick a vertex uniformly,
/// then with probability 1/2 insert it if none of its neighbours is present,
/// otherwise remove it.
pub fn glauber_stable_set<R: Rng + ?Sized>(
    graph: &JohnsonGraph,
    steps: u64,
    rng: &mut R,
) -> Vec<ElementSet> {
    let mut state: HashSet<ElementSet> = HashSet::new();
    if graph.vertex_count() == 0 {
        return Vec::new();
    }
    for _ in 0..steps {
        let v = random_vertex(graph, rng);
        if rng.random_bool(0.5) {
            if !state.contains(&v) && !graph.neighbors(v).any(|u| state.contains(&u)) {
                state.insert(v);
            }
        } else {
            state.remove(&v);
        }
    }
    let mut out: Vec<_> = state.into_iter().collect();
    out.sort_unstable();
    out
}

fn glauber_steps(graph: &JohnsonGraph, config: &GlauberConfig) -> u64 {
    let n = graph.vertex_count();
    let steps = n.saturating_mul(config.steps_per_vertex as u128);
    steps.min(config.max_steps as u128) as u64
}

/// Stable-set sampler for one `J(n, r)`.
pub enum StableSetSampler {
    Exact {
        graph: DenseJohnson,
        counter: StableSetCounter,
    },
    Approximate {
        graph: JohnsonGraph,
        steps: u64,
    },
}

impl StableSetSampler {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        Self::with_config(n, r, GlauberConfig::default())
    }

    pub fn with_config(n: usize, r: usize, config: GlauberConfig) -> Result<Self> {
        let graph = JohnsonGraph::new(n, r)?;
        if graph.vertex_count() <= MAX_DENSE_VERTICES as u128 {
            let dense = DenseJohnson::new(n, r)?;
            match StableSetCounter::new(&dense) {
                Ok(counter) => {
                    return Ok(StableSetSampler::Exact {
                        graph: dense,
                        counter,
                    })
                }
                Err(Error::BudgetExceeded(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(StableSetSampler::Approximate {
            steps: glauber_steps(&graph, &config),
            graph,
        })
    }

    /// Glauber dynamics without trying an exact count first.
    pub fn approximate(n: usize, r: usize, config: GlauberConfig) -> Result<Self> {
        let graph = JohnsonGraph::new(n, r)?;
        Ok(StableSetSampler::Approximate {
            steps: glauber_steps(&graph, &config),
            graph,
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, StableSetSampler::Exact { .. })
    }

    /// Number of stable sets, when known exactly.
    pub fn total(&self) -> Option<u128> {
        match self {
            StableSetSampler::Exact { counter, .. } => Some(counter.total()),
            StableSetSampler::Approximate { .. } => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> StableSample {
        match self {
            StableSetSampler::Exact { graph, counter } => {
                let i = rng.random_range(0..counter.total());
                let mask = counter.unrank(i).expect("index drawn in range");
                StableSample {
                    vertices: graph.decode(mask),
                    exact: true,
                }
            }
            StableSetSampler::Approximate { graph, steps } => StableSample {
                vertices: glauber_stable_set(graph, *steps, rng),
                exact: false,
            },
        }
    }
}

/// A uniform stable set of `J(n, r)` for `seed`.
pub fn sample_stable_uniform(n: usize, r: usize, seed: u64) -> Result<StableSample> {
    let sampler = StableSetSampler::new(n, r)?;
    Ok(sampler.sample(&mut rng_from_seed(seed)))
}

/// A sampled matroid, flagged exact or approximate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidSample {
    pub matroid: SparsePavingMatroid,
    pub exact: bool,
}

fn matroid_from_stable(n: usize, r: usize, vertices: Vec<ElementSet>) -> SparsePavingMatroid {
    let lines = LineStructure::from_sorted_unchecked(r, vertices);
    SparsePavingMatroid::from_line_structure(n, lines).expect("stable set leaving a basis")
}

/// Uniform sampler over the sparse paving matroids of rank `r` on `[n]`.
pub struct RankSampler {
    n: usize,
    r: usize,
    inner: Option<StableSetSampler>,
}

impl RankSampler {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        Self::with_config(n, r, GlauberConfig::default())
    }

    pub fn with_config(n: usize, r: usize, config: GlauberConfig) -> Result<Self> {
        JohnsonGraph::new(n, r)?;
        // at r ∈ {0, n} the only matroid has no non-bases
        let inner = if r == 0 || r == n {
            None
        } else {
            Some(StableSetSampler::with_config(n, r, config)?)
        };
        Ok(RankSampler { n, r, inner })
    }

    pub fn approximate(n: usize, r: usize, config: GlauberConfig) -> Result<Self> {
        JohnsonGraph::new(n, r)?;
        let inner = if r == 0 || r == n {
            None
        } else {
            Some(StableSetSampler::approximate(n, r, config)?)
        };
        Ok(RankSampler { n, r, inner })
    }

    pub fn is_exact(&self) -> bool {
        self.inner.as_ref().is_none_or(|s| s.is_exact())
    }

    /// `s_{n,r}` when known.
    pub fn total(&self) -> Option<u128> {
        match &self.inner {
            None => Some(1),
            Some(s) => s.total(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MatroidSample {
        match &self.inner {
            None => MatroidSample {
                matroid: SparsePavingMatroid::uniform(self.r, self.n).expect("valid uniform"),
                exact: true,
            },
            Some(s) => {
                let draw = s.sample(rng);
                MatroidSample {
                    matroid: matroid_from_stable(self.n, self.r, draw.vertices),
                    exact: draw.exact,
                }
            }
        }
    }

    /// The `index`-th matroid of this rank in enumeration order (exact
    /// samplers only).
    pub fn nth(&self, index: u128) -> Result<SparsePavingMatroid> {
        match &self.inner {
            None if index == 0 => SparsePavingMatroid::uniform(self.r, self.n),
            None => Err(Error::InvalidParameter(format!(
                "index {index} out of range"
            ))),
            Some(StableSetSampler::Exact { graph, counter }) => {
                let mask = counter.unrank(index)?;
                Ok(matroid_from_stable(self.n, self.r, graph.decode(mask)))
            }
            Some(StableSetSampler::Approximate { .. }) => Err(Error::BudgetExceeded(format!(
                "J({},{}) is outside the exact range",
                self.n, self.r
            ))),
        }
    }
}

/// Sampler over all sparse paving matroids on `[n]`.
///
/// When every rank is countable, ranks are drawn with weight `s_{n,r}` and the
/// draw is uniform over `S_n`. Otherwise ranks are drawn uniformly from
/// `rank_window(n)` and the result is flagged approximate.
pub struct SparsePavingSampler {
    n: usize,
    ranks: Vec<(usize, RankSampler)>,
    weights: Option<Vec<u128>>,
}

/// Rank range used when `S_n` is too large to weight ranks exactly:
/// `[⌈n/3⌉, ⌊2n/3⌋]`, where almost all of `S_n` lives.
pub fn rank_window(n: usize) -> (usize, usize) {
    let lo = n.div_ceil(3);
    let hi = (2 * n / 3).max(lo);
    (lo, hi.min(n))
}

impl SparsePavingSampler {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_config(n, GlauberConfig::default())
    }

    pub fn with_config(n: usize, config: GlauberConfig) -> Result<Self> {
        let dense = (0..=n).all(|r| {
            JohnsonGraph::new(n, r)
                .map(|g| g.vertex_count() <= MAX_DENSE_VERTICES as u128)
                .unwrap_or(false)
        });
        let (lo, hi) = rank_window(n);
        if !dense {
            let ranks = (lo..=hi)
                .map(|r| Ok((r, RankSampler::with_config(n, r, config)?)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(SparsePavingSampler {
                n,
                ranks,
                weights: None,
            });
        }
        let mut ranks: Vec<(usize, RankSampler)> = Vec::with_capacity(n + 1);
        for r in 0..=n {
            // J(n, r) and J(n, n - r) are isomorphic: no second attempt at
            // an exact count that already failed.
            let sampler = if r > n - r && !ranks[n - r].1.is_exact() {
                RankSampler::approximate(n, r, config)?
            } else {
                RankSampler::with_config(n, r, config)?
            };
            ranks.push((r, sampler));
        }
        if ranks.iter().all(|(_, s)| s.is_exact()) {
            let weights = ranks.iter().map(|(_, s)| s.total().unwrap()).collect();
            return Ok(SparsePavingSampler {
                n,
                ranks,
                weights: Some(weights),
            });
        }
        ranks.retain(|(r, _)| (lo..=hi).contains(r));
        Ok(SparsePavingSampler {
            n,
            ranks,
            weights: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_exact(&self) -> bool {
        self.weights.is_some()
    }

    /// `s_n`, when known.
    pub fn total(&self) -> Option<u128> {
        self.weights.as_ref().map(|w| w.iter().sum())
    }

    /// `s_{n,r}` per rank, when known.
    pub fn rank_counts(&self) -> Option<&[u128]> {
        self.weights.as_deref()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MatroidSample {
        match &self.weights {
            Some(weights) => {
                let total: u128 = weights.iter().sum();
                let i = rng.random_range(0..total);
                self.nth(i)
                    .map(|matroid| MatroidSample {
                        matroid,
                        exact: true,
                    })
                    .expect("index drawn in range")
            }
            None => {
                let k = rng.random_range(0..self.ranks.len());
                let mut draw = self.ranks[k].1.sample(rng);
                draw.exact = false;
                draw
            }
        }
    }

    /// The `index`-th member of `S_n`, ordered by rank then enumeration
    /// order. Only available in the exact range.
    pub fn nth(&self, mut index: u128) -> Result<SparsePavingMatroid> {
        let weights = self.weights.as_ref().ok_or_else(|| {
            Error::BudgetExceeded(format!("S_{} is outside the exact range", self.n))
        })?;
        for ((_, sampler), &w) in self.ranks.iter().zip(weights) {
            if index < w {
                return sampler.nth(index);
            }
            index -= w;
        }
        Err(Error::InvalidParameter("index out of range".into()))
    }

    /// Every member of `S_n` in [`nth`](Self::nth) order.
    pub fn iter_all(&self) -> Result<impl Iterator<Item = SparsePavingMatroid> + '_> {
        let total = self.total().ok_or_else(|| {
            Error::BudgetExceeded(format!("S_{} is outside the exact range", self.n))
        })?;
        Ok((0..total).map(move |i| self.nth(i).expect("in range")))
    }
}
