//! Minor containment: the exhaustive oracle, uniform minors, and clean
//! copies of a target's line structure.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::embed::{contains_line_structure, for_each_embedding, Embedding};
use super::quotient::{contract, PavingQuotient};
use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::subset::{binomial, ElementSet};

/// Default cap on `C(n, r - r_H) * C(n, n_H)` for [`has_minor`].
pub const DEFAULT_MINOR_BUDGET: u128 = 100_000_000;

/// `H ≅ (M/A)|E`, with `D = [n] \ (A ∪ E)` deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub contracted: ElementSet,
    pub deleted: ElementSet,
    /// `(element of H, element of M)`, ascending in `H`.
    pub mapping: Vec<(u32, u32)>,
}

impl MinorWitness {
    /// The restriction set `E`.
    pub fn kept(&self) -> ElementSet {
        self.mapping.iter().map(|&(_, m)| m).collect()
    }
}

/// Extends an embedding of `L(H)` to a bijection `E(H) -> kept`: elements off
/// the support are matched in ascending order.
fn complete_mapping(
    h: &SparsePavingMatroid,
    embedding: &Embedding,
    kept: ElementSet,
) -> Vec<(u32, u32)> {
    let mut mapping = embedding.map().to_vec();
    let spare_h = h.ground() - h.line_structure().support();
    let spare_m = kept - embedding.image();
    mapping.extend(spare_h.iter().zip(spare_m.iter()));
    mapping.sort_unstable();
    mapping
}

/// Independent sets of size `k`, in bitmask order.
fn contraction_sets(m: &SparsePavingMatroid, k: usize) -> impl Iterator<Item = ElementSet> + '_ {
    m.ground()
        .subsets_of_size(k)
        .filter(move |&a| k < m.rank() || !m.is_nonbasis(a))
}

fn shape_admits(m: &SparsePavingMatroid, h: &SparsePavingMatroid) -> bool {
    h.rank() <= m.rank() && h.n() <= m.n() && h.n() - h.rank() <= m.n() - m.rank()
}

/// [`has_minor_with_budget`] with [`DEFAULT_MINOR_BUDGET`].
pub fn has_minor(m: &SparsePavingMatroid, h: &SparsePavingMatroid) -> Result<Option<MinorWitness>> {
    has_minor_with_budget(m, h, DEFAULT_MINOR_BUDGET)
}

/// Exhaustive minor test. Tries every independent `A` with
/// `|A| = r(M) - r(H)` and every `n_H`-subset `E` of `[n] \ A`, accepting
/// when the dependent sets of `(M/A)|E` are an isomorphic copy of `L(H)`.
/// The first witness in that order is returned.
pub fn has_minor_with_budget(
    m: &SparsePavingMatroid,
    h: &SparsePavingMatroid,
    budget: u128,
) -> Result<Option<MinorWitness>> {
    if !shape_admits(m, h) {
        return Ok(None);
    }
    let n = m.n() as u64;
    let k = m.rank() - h.rank();
    let pairs = binomial(n, k as u64).saturating_mul(binomial(n, h.n() as u64));
    if pairs > budget {
        return Err(Error::BudgetExceeded(format!(
            "minor search needs {pairs} contraction/restriction pairs, budget {budget}"
        )));
    }
    let target = h.line_structure();
    for a in contraction_sets(m, k) {
        let q = contract(m, a)?;
        for kept in q.ground().subsets_of_size(h.n()) {
            let inside: Vec<ElementSet> = q.dependents_within(kept).collect();
            if inside.len() != target.len() {
                continue;
            }
            if let Some(embedding) = contains_line_structure(&inside, target) {
                return Ok(Some(MinorWitness {
                    contracted: a,
                    deleted: m.ground() - a - kept,
                    mapping: complete_mapping(h, &embedding, kept),
                }));
            }
        }
    }
    Ok(None)
}

/// Grows `base` by `extra` elements of `pool` (ascending, first found) so
/// that no set in `forbidden` lies inside the result. Sets already inside
/// `base` are not checked.
fn extend_avoiding(
    base: ElementSet,
    pool: ElementSet,
    extra: usize,
    forbidden: &[ElementSet],
) -> Option<ElementSet> {
    fn go(
        chosen: ElementSet,
        pool: &[u32],
        start: usize,
        left: usize,
        forbidden: &[ElementSet],
    ) -> Option<ElementSet> {
        if left == 0 {
            return Some(chosen);
        }
        for i in start..pool.len() {
            if pool.len() - i < left {
                break;
            }
            let x = pool[i];
            let next = chosen.with(x);
            if forbidden
                .iter()
                .any(|&f| f.contains(x) && f.is_subset(next))
            {
                continue;
            }
            if let Some(found) = go(next, pool, i + 1, left - 1, forbidden) {
                return Some(found);
            }
        }
        None
    }
    go(base, &pool.to_vec(), 0, extra, forbidden)
}

/// `(M/A)|B ≅ U_{t,k}`: the contraction set `A` and the set `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformMinorWitness {
    pub contracted: ElementSet,
    pub kept: ElementSet,
}

/// First independent `A` with `|A| = r - t` (bitmask order) admitting a
/// `k`-set of `[n] \ A` free of dependent `t`-sets of `M/A`.
pub fn find_uniform_minor(
    m: &SparsePavingMatroid,
    t: usize,
    k: usize,
) -> Option<UniformMinorWitness> {
    if t > k || t > m.rank() || k - t > m.n() - m.rank() {
        return None;
    }
    for a in contraction_sets(m, m.rank() - t) {
        let q = contract(m, a).expect("independent contraction set");
        if let Some(kept) = extend_avoiding(ElementSet::EMPTY, q.ground(), k, q.dependents()) {
            return Some(UniformMinorWitness {
                contracted: a,
                kept,
            });
        }
    }
    None
}

/// Whether `M` has a `U_{t,k}` minor; false when the shapes rule it out.
pub fn has_uniform_minor(m: &SparsePavingMatroid, t: usize, k: usize) -> bool {
    find_uniform_minor(m, t, k).is_some()
}

/// A copy of `L(H)` among the dependents of `M/A` with no further dependent
/// sets inside `kept`, so `(M/A)|kept ≅ H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanCopy {
    pub contracted: ElementSet,
    pub embedding: Embedding,
    pub kept: ElementSet,
    /// `(element of H, element of M)`, ascending in `H`.
    pub mapping: Vec<(u32, u32)>,
}

impl CleanCopy {
    pub fn to_witness(&self, m: &SparsePavingMatroid) -> MinorWitness {
        MinorWitness {
            contracted: self.contracted,
            deleted: m.ground() - self.contracted - self.kept,
            mapping: self.mapping.clone(),
        }
    }
}

fn clean_copy_in(q: &PavingQuotient, h: &SparsePavingMatroid) -> Option<(Embedding, ElementSet)> {
    let target = h.line_structure();
    let mut found = None;
    for_each_embedding(q.dependents(), target, |embedding| {
        let image = embedding.image();
        let edges = embedding.image_edges();
        let stray = q
            .dependents_within(image)
            .any(|d| edges.binary_search(&d).is_err());
        if stray {
            return ControlFlow::Continue(());
        }
        let extra = h.n() - image.len();
        match extend_avoiding(image, q.ground() - image, extra, q.dependents()) {
            Some(kept) => {
                found = Some((embedding.clone(), kept));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    found
}

/// Looks for a copy of `L(H)` among the dependents of `M/A` that extends to
/// an `n_H`-set with no additional dependents. `None` when `A` has the wrong
/// size or is dependent.
pub fn clean_copy_minor(
    m: &SparsePavingMatroid,
    a: ElementSet,
    h: &SparsePavingMatroid,
) -> Option<CleanCopy> {
    if !shape_admits(m, h) || a.len() + h.rank() != m.rank() {
        return None;
    }
    let q = contract(m, a).ok()?;
    let (embedding, kept) = clean_copy_in(&q, h)?;
    let mapping = complete_mapping(h, &embedding, kept);
    Some(CleanCopy {
        contracted: a,
        embedding,
        kept,
        mapping,
    })
}

/// [`clean_copy_minor`] over every independent `A` of the right size, in
/// bitmask order.
pub fn find_clean_copy_minor(
    m: &SparsePavingMatroid,
    h: &SparsePavingMatroid,
) -> Option<CleanCopy> {
    if !shape_admits(m, h) {
        return None;
    }
    contraction_sets(m, m.rank() - h.rank()).find_map(|a| clean_copy_minor(m, a, h))
}

/// Checks a witness against the definition: `A` independent, and the
/// dependents of `(M/A)|E` are exactly the images of `L(H)`.
pub fn verify_minor_witness(
    m: &SparsePavingMatroid,
    h: &SparsePavingMatroid,
    w: &MinorWitness,
) -> bool {
    let Ok(q) = contract(m, w.contracted) else {
        return false;
    };
    if q.rank() != h.rank() || w.mapping.len() != h.n() {
        return false;
    }
    let kept = w.kept();
    if kept.len() != h.n()
        || !kept.is_subset(q.ground())
        || w.deleted != m.ground() - w.contracted - kept
    {
        return false;
    }
    let image = |set: ElementSet| -> ElementSet {
        set.iter()
            .map(|e| w.mapping[w.mapping.partition_point(|&(x, _)| x < e)].1)
            .collect()
    };
    let mut mapped: Vec<ElementSet> = h.nonbases().iter().map(|&c| image(c)).collect();
    mapped.sort_unstable();
    let inside: Vec<ElementSet> = q.dependents_within(kept).collect();
    mapped == inside
}
