use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::subset::{binomial, ElementSet};

/// A contraction `M/A` of a sparse paving matroid, possibly restricted.
///
/// Contractions of paving matroids by independent sets stay paving, so the
/// quotient is determined by its rank and its dependent `rank`-sets. Those
/// need not pairwise meet in `rank - 2` elements: the quotient is usually
/// not sparse paving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PavingQuotient {
    ground: ElementSet,
    rank: usize,
    dependents: Vec<ElementSet>,
    host_n: usize,
    contracted: ElementSet,
}

impl PavingQuotient {
    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dependent `rank`-sets, in bitmask order.
    pub fn dependents(&self) -> &[ElementSet] {
        &self.dependents
    }

    /// Ground set size of the matroid this quotient came from.
    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// The contraction set `A`.
    pub fn contracted(&self) -> ElementSet {
        self.contracted
    }

    pub fn is_dependent(&self, set: ElementSet) -> bool {
        self.dependents.binary_search(&set).is_ok()
    }

    /// Dependent sets lying inside `within`.
    pub fn dependents_within(&self, within: ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
        self.dependents
            .iter()
            .copied()
            .filter(move |d| d.is_subset(within))
    }
}

/// `M/A`: rank `r - |A|` on `[n] \ A`, whose dependent sets are `C \ A` for
/// the non-bases `C ⊇ A`.
pub fn contract(matroid: &SparsePavingMatroid, contracted: ElementSet) -> Result<PavingQuotient> {
    if !contracted.within(matroid.n()) {
        let element = (contracted - matroid.ground()).min_element().unwrap_or(0);
        return Err(Error::ElementOutOfRange {
            element,
            n: matroid.n(),
        });
    }
    let r = matroid.rank();
    if contracted.len() > r {
        return Err(Error::DependentContractionSet(contracted));
    }
    if contracted.len() == r && matroid.is_nonbasis(contracted) {
        return Err(Error::DependentContractionSet(contracted));
    }
    let mut dependents: Vec<ElementSet> = matroid
        .nonbases()
        .iter()
        .filter(|c| contracted.is_subset(**c))
        .map(|&c| c - contracted)
        .collect();
    dependents.sort_unstable();
    Ok(PavingQuotient {
        ground: matroid.ground() - contracted,
        rank: r - contracted.len(),
        dependents,
        host_n: matroid.n(),
        contracted,
    })
}

/// `Q|E`: same rank, dependents inside `E`. Fails with
/// [`Error::RankDeficient`] when `E` holds no independent `rank`-set.
pub fn restrict(quotient: &PavingQuotient, within: ElementSet) -> Result<PavingQuotient> {
    if !within.is_subset(quotient.ground) {
        let element = (within - quotient.ground).min_element().unwrap_or(0);
        return Err(Error::ElementOutOfRange {
            element,
            n: quotient.host_n,
        });
    }
    let dependents: Vec<ElementSet> = quotient.dependents_within(within).collect();
    let rank_sets = binomial(within.len() as u64, quotient.rank as u64);
    if rank_sets == 0 || dependents.len() as u128 >= rank_sets {
        return Err(Error::RankDeficient(within));
    }
    Ok(PavingQuotient {
        ground: within,
        rank: quotient.rank,
        dependents,
        host_n: quotient.host_n,
        contracted: quotient.contracted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::make_sparse_paving;

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn contraction_examples() {
        let m = make_sparse_paving(5, 3, [set(&[1, 2, 3]), set(&[1, 4, 5])]).unwrap();
        let q = contract(&m, set(&[1])).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(q.ground(), set(&[2, 3, 4, 5]));
        assert_eq!(q.dependents(), &[set(&[2, 3]), set(&[4, 5])]);

        let id = contract(&m, ElementSet::EMPTY).unwrap();
        assert_eq!(id.dependents(), m.nonbases());

        let m2 = make_sparse_paving(5, 3, [set(&[1, 2, 3]), set(&[2, 4, 5])]).unwrap();
        let q2 = contract(&m2, set(&[2])).unwrap();
        assert_eq!(q2.dependents(), &[set(&[1, 3]), set(&[4, 5])]);
    }

    #[test]
    fn dependent_contraction_rejected() {
        let m = make_sparse_paving(5, 3, [set(&[1, 2, 3])]).unwrap();
        assert!(matches!(
            contract(&m, set(&[1, 2, 3])),
            Err(Error::DependentContractionSet(_))
        ));
        assert!(contract(&m, set(&[1, 2, 4])).is_ok());
        assert!(contract(&m, set(&[1, 2, 4, 5])).is_err());
    }

    #[test]
    fn restriction_examples() {
        let m = make_sparse_paving(5, 3, [set(&[1, 2, 3]), set(&[1, 4, 5])]).unwrap();
        let q = contract(&m, set(&[1])).unwrap();
        assert_eq!(restrict(&q, q.ground()).unwrap(), q);
        let r = restrict(&q, set(&[2, 3, 4])).unwrap();
        assert_eq!(r.dependents(), &[set(&[2, 3])]);
        assert!(matches!(
            restrict(&q, set(&[2])),
            Err(Error::RankDeficient(_))
        ));
        // the only 2-subset of {2,3} is dependent
        assert!(matches!(
            restrict(&q, set(&[2, 3])),
            Err(Error::RankDeficient(_))
        ));
    }
}
